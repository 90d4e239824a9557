#pragma once

#include "radonlab/budget.hpp"
#include "radonlab/errors.hpp"
#include "radonlab/exponential_sums.hpp"
#include "radonlab/fft.hpp"
#include "radonlab/iw_sets.hpp"
#include "radonlab/lattice.hpp"
#include "radonlab/lattice_function.hpp"
#include "radonlab/multiindex.hpp"
#include "radonlab/multipliers.hpp"
#include "radonlab/number_theory.hpp"
#include "radonlab/phase.hpp"
#include "radonlab/polynomial.hpp"
#include "radonlab/quadrature.hpp"
#include "radonlab/radon.hpp"
#include "radonlab/report.hpp"
#include "radonlab/variation.hpp"
