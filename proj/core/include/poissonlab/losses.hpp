#pragma once

#include <string_view>

#include "poissonlab/gridfn.hpp"

namespace poissonlab {

/// int (sqrt f - sqrt g)^2 for nonnegative f, g.
double hellinger_sq(const GridFunction& f, const GridFunction& g);

/// L_n(f, g) = int (g - f)^2 / (f + n^{-1/2} g). Cells where both f and g
/// vanish contribute 0. Not symmetric in (f, g).
double ln_loss(const GridFunction& f, const GridFunction& g, double n);

/// Squared Hellinger distance between the laws of Poisson processes with
/// intensities g and h: 2 (1 - exp(-int (sqrt g - sqrt h)^2 / 2)).
double hellinger_sq_poisson(const GridFunction& g_intensity, const GridFunction& h_intensity);

double l2_sq(const GridFunction& f, const GridFunction& g);
double sup_dist(const GridFunction& f, const GridFunction& g);

enum class Metric { ln, hellinger2, scaled_hellinger2, l2, sup };

std::string_view to_string(Metric metric) noexcept;
/// Accepts ln, hellinger2, scaled-hellinger2, l2, sup.
Metric parse_metric(std::string_view name);

/// Loss of estimate g for truth f at sample scale n. scaled-hellinger2 is
/// sqrt(n) * H^2(g, f).
double evaluate_metric(Metric metric, const GridFunction& truth, const GridFunction& estimate, double n);

}  // namespace poissonlab
