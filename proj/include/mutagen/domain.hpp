#ifndef MUTAGEN_DOMAIN_HPP
#define MUTAGEN_DOMAIN_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mutagen {

/// One GA chromosome: a fixed-arity vector of integer inputs.
struct TestCase {
    std::vector<long long> genes;

    friend bool operator==(const TestCase& a, const TestCase& b) {
        return a.genes == b.genes;
    }
    friend bool operator<(const TestCase& a, const TestCase& b) {
        return a.genes < b.genes;
    }
};

/// Per-parameter inclusive integer intervals.
struct InputDomain {
    struct Interval {
        long long lo;
        long long hi;
    };
    std::vector<Interval> params;

    void validate() const {
        for (const auto& iv : params)
            if (iv.lo > iv.hi)
                throw std::invalid_argument("domain interval has lo > hi");
    }

    bool contains(const TestCase& t) const {
        if (t.genes.size() != params.size()) return false;
        for (size_t i = 0; i < params.size(); ++i)
            if (t.genes[i] < params[i].lo || t.genes[i] > params[i].hi) return false;
        return true;
    }

    /// Number of points in the cross product; saturates at UINT64_MAX.
    uint64_t point_count() const {
        uint64_t n = 1;
        for (const auto& iv : params) {
            uint64_t w = static_cast<uint64_t>(iv.hi - iv.lo) + 1;
            if (w != 0 && n > UINT64_MAX / w) return UINT64_MAX;
            n *= w;
        }
        return n;
    }

    /// Visit every point of the domain in lexicographic order.
    template <typename Fn>
    void for_each_point(Fn&& fn) const {
        TestCase t;
        t.genes.resize(params.size());
        visit_from(0, t, fn);
    }

    static InputDomain uniform(size_t arity, long long lo, long long hi) {
        InputDomain d;
        d.params.assign(arity, {lo, hi});
        return d;
    }

private:
    template <typename Fn>
    void visit_from(size_t idx, TestCase& t, Fn& fn) const {
        if (idx == params.size()) {
            fn(static_cast<const TestCase&>(t));
            return;
        }
        for (long long v = params[idx].lo; v <= params[idx].hi; ++v) {
            t.genes[idx] = v;
            visit_from(idx + 1, t, fn);
        }
    }
};

}  // namespace mutagen

#endif
