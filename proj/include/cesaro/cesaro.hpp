#pragma once

#include "cesaro/coeff_io.hpp"
#include "cesaro/dirichlet.hpp"
#include "cesaro/experiments.hpp"
#include "cesaro/hadamard.hpp"
#include "cesaro/quadrature.hpp"
#include "cesaro/report.hpp"
#include "cesaro/series.hpp"
