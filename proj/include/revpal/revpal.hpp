#pragma once

#include "revpal/densities.hpp"
#include "revpal/digits.hpp"
#include "revpal/experiments.hpp"
#include "revpal/report.hpp"
#include "revpal/revgoldbach.hpp"
#include "revpal/sieve.hpp"
#include "revpal/verifier.hpp"
