#ifndef MUTAGEN_MUTAGEN_HPP
#define MUTAGEN_MUTAGEN_HPP

#include "ast.hpp"
#include "domain.hpp"
#include "ga.hpp"
#include "interp.hpp"
#include "mutate.hpp"
#include "parser.hpp"
#include "printer.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "suite.hpp"

#endif
