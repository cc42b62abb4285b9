#pragma once

#include <utility>

#include "rmfrac/errors.hpp"
#include "rmfrac/frac_series.hpp"
#include "rmfrac/model.hpp"
#include "rmfrac/special_functions.hpp"

namespace rmfrac {

//
// Reference closed forms of the first four HPM terms for the
// four-term bracket, transcribed as printed. Orders 0..2 agree with
// exact p-collection. The printed order-3 terms carry lower-order
// duplicates (a t^(m+n) term in x_3 copied from x_2, a t^(2m) term,
// and their predator analogues) and are kept verbatim as a regression
// fixture, not as ground truth.
//
// Shorthands:
//   B0 = 1/a - d/a^2 + d^2/a^3 - d^3/a^4              (bracket at delta)
//   B1 = 2d/a^3 - 1/a^2 - 3d^2/a^4                     (its derivative)
//   C1 = r d - r d^2/K - alpha d g B0                  (x_1 coefficient)
//   E1 = beta d g B0 - d_death g                       (y_1 coefficient)
//   L  = r - 2 r d/K - alpha d g B1 - alpha g B0
//   Q  = beta d g B1 + beta g B0
//   P  = beta d B0 - d_death
// with d = delta, g = gamma0.
//
inline std::pair<FracSeries, FracSeries> closed_form_reference(const ModelParams& p, int k) {
    if (k < 0 || k > 3) {
        throw DomainError("closed_form_reference: k must lie in 0..3");
    }
    const SeriesContext ctx = p.context();
    const double m = p.m;
    const double n = p.n;
    const double a = p.a;
    const double dl = p.delta;
    const double gm = p.gamma0;
    const double r = p.r;
    const double K = p.K;
    const double al = p.alpha;
    const double be = p.beta;
    const double dd = p.d;

    const double a2 = a * a;
    const double a3 = a2 * a;
    const double a4 = a3 * a;
    const double B0 = 1.0 / a - dl / a2 + dl * dl / a3 - dl * dl * dl / a4;
    const double B1 = 2.0 * dl / a3 - 1.0 / a2 - 3.0 * dl * dl / a4;
    const double C1 = r * dl - r * dl * dl / K - al * dl * gm * B0;
    const double E1 = be * dl * gm * B0 - dd * gm;
    const double L = r - 2.0 * r * dl / K - al * dl * gm * B1 - al * gm * B0;
    const double Q = be * dl * gm * B1 + be * gm * B0;
    const double P = be * dl * B0 - dd;

    auto G = [](double v) { return rmfrac::gamma(v); };

    FracSeries x(ctx);
    FracSeries y(ctx);
    switch (k) {
    case 0:
        x.accumulate({0, 0}, dl);
        y.accumulate({0, 0}, gm);
        break;
    case 1:
        x.accumulate({1, 0}, C1 / G(m + 1.0));
        y.accumulate({0, 1}, E1 / G(n + 1.0));
        break;
    case 2:
        x.accumulate({2, 0}, L * C1 / G(2.0 * m + 1.0));
        x.accumulate({1, 1}, -al * dl * B0 * E1 / G(m + n + 1.0));
        y.accumulate({1, 1}, Q * C1 / G(m + n + 1.0));
        y.accumulate({0, 2}, P * E1 / G(2.0 * n + 1.0));
        break;
    case 3: {
        const double Gm1 = G(m + 1.0);
        const double Gn1 = G(n + 1.0);
        const double G2m1 = G(2.0 * m + 1.0);
        const double Gmn1 = G(m + n + 1.0);
        const double G3m1 = G(3.0 * m + 1.0);
        const double G2mn1 = G(2.0 * m + n + 1.0);
        const double Gm2n1 = G(m + 2.0 * n + 1.0);
        const double G3n1 = G(3.0 * n + 1.0);

        x.accumulate({3, 0}, L * L * C1 / G3m1);
        x.accumulate({3, 0}, -(r / K + al * dl * gm / a3 - 3.0 * al * dl * dl * gm / a4) * C1 * C1 * G2m1 /
                                 (Gm1 * Gm1 * G3m1));
        x.accumulate({1, 1}, -al * dl * B0 * E1 / Gmn1);
        x.accumulate({2, 0}, -al * gm * B0 * C1 / G2m1);
        x.accumulate({2, 1}, -al * dl * B0 * L * E1 / G2mn1);
        x.accumulate({2, 1}, -al * B0 * C1 * E1 * Gmn1 / (Gm1 * Gn1 * G2mn1));
        x.accumulate({2, 1}, -al * be * dl * B0 * (gm * B0 + dl * gm * B1) * C1 / G2mn1);
        x.accumulate({1, 2}, -al * dl * B0 * P * E1 / Gm2n1);

        y.accumulate({2, 1}, Q * L * C1 / G2mn1);
        y.accumulate({1, 2}, -al * dl * B0 * Q * E1 / Gm2n1);
        y.accumulate({2, 1}, (be * dl * gm / a3 - 3.0 * be * dl * dl * gm / a4) * C1 * C1 * G2m1 /
                                 (Gm1 * Gm1 * G2mn1));
        y.accumulate({0, 2}, be * dl * B0 * E1 / G(2.0 * n + 1.0));
        y.accumulate({1, 1}, be * gm * B0 * C1 / Gmn1);
        y.accumulate({1, 2}, be * B0 * C1 * E1 * Gmn1 / (Gm1 * Gn1 * Gm2n1));
        y.accumulate({1, 2}, P * (be * gm * B0 + be * dl * gm * B1) * C1 / Gm2n1);
        y.accumulate({0, 3}, P * P * E1 / G3n1);
        break;
    }
    }
    x.canonicalize();
    y.canonicalize();
    return {std::move(x), std::move(y)};
}

} // namespace rmfrac
