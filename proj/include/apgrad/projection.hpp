#pragma once

#include "apgrad/core.hpp"

namespace apgrad {

// Componentwise clamp onto the box. Also the H-weighted projection for any
// positive diagonal H, since the objective separates per coordinate.
Vec project_box(const FeasibleSet& set, const Vec& y);

// argmin_{||x-c|| <= r} sum_i h_i (x_i - y_i)^2 via the stationarity form
// x_i = c_i + h_i (y_i - c_i) / (h_i + mu) with mu >= 0 chosen by bisection
// so the radius constraint holds to relative tolerance tol. Feasible y is
// returned unchanged.
Vec project_ball_weighted(const FeasibleSet& set, const DiagonalMatrix& h, const Vec& y,
                          double tol);

// H-weighted projection onto either set kind (tol 1e-12 for the ball).
Vec project(const FeasibleSet& set, const DiagonalMatrix& h, const Vec& y);

}  // namespace apgrad
