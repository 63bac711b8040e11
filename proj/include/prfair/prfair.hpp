#pragma once

#include "prfair/axioms.hpp"
#include "prfair/baselines.hpp"
#include "prfair/core.hpp"
#include "prfair/evaluation.hpp"
#include "prfair/prf_engine.hpp"
#include "prfair/random.hpp"
#include "prfair/rational.hpp"
