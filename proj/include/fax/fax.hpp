#pragma once

#include "fax/alphabet.hpp"
#include "fax/automaton.hpp"
#include "fax/automaton_io.hpp"
#include "fax/bench.hpp"
#include "fax/chain.hpp"
#include "fax/errors.hpp"
#include "fax/explain.hpp"
#include "fax/hitting_set.hpp"
#include "fax/inclusion.hpp"
#include "fax/index_set.hpp"
#include "fax/regex.hpp"
#include "fax/report.hpp"
#include "fax/rng.hpp"
