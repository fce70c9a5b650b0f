#pragma once

#include "quasihyp/errors.hpp"
#include "quasihyp/rational.hpp"
#include "quasihyp/exactalg.hpp"
#include "quasihyp/geometry.hpp"
#include "quasihyp/linear_program.hpp"
#include "quasihyp/lattice.hpp"
#include "quasihyp/filtration.hpp"
#include "quasihyp/hypothesis.hpp"
#include "quasihyp/bounds.hpp"
#include "quasihyp/koszul.hpp"
#include "quasihyp/multiplicity.hpp"
#include "quasihyp/certify.hpp"
#include "quasihyp/problem.hpp"
#include "quasihyp/report.hpp"
