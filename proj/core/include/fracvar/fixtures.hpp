#pragma once

#include <functional>
#include <string>

#include "fracvar/noether.hpp"
#include "fracvar/profile.hpp"

namespace fracvar {

/// One of the two worked examples: Lagrangian, symmetry generator (c = 1) and
/// the closed-form Noether quantity.
struct ExampleFixture {
    int id;
    FracOrder order;
    Lagrangian lagrangian;
    Generator generator;
    /// Closed-form expansion of the Noether quantity of `generator` along a path.
    std::function<SampledSignal(const FracProblem&, const VectorPath&)> expected_quantity;

    /// The example's order fills the slot it uses; the unused slot gets order 1.
    FracProblem make_problem(const Grid& grid, Boundary boundary, Scheme scheme = Scheme::GL) const;
    /// Boundary values taken from the path's end nodes.
    FracProblem make_problem(const VectorPath& q, Scheme scheme = Scheme::GL) const;
};

/// L = (D^a q1) q2 - (D^a q2) q1 - (q1 - q2) q3 with (tau, xi) = (-t, 0, 0, q3).
ExampleFixture example1(FracOrder alpha);

/// L = -(D_r^b q1) q2 - (D_r^b q3) q4 + (q4^2 - 2 q2 q3)/2 with
/// (tau, xi) = (2t/3, q1, -q2, q3/3, -q4/3).
ExampleFixture example2(FracOrder beta);

/// Extremal family of example 1: (q, q, D_right^alpha q - D_left^alpha q), with
/// the derivatives evaluated exactly from the profile. Nodes where either
/// derivative is singular are masked in the third component.
VectorPath example1_extremal(FracOrder alpha, const PowerProfile& profile, const Grid& grid);

/// [(1 - alpha)((D^a q1) q2 - (D^a q2) q1) - (q1 - q2) q3] t, in the printed
/// sign convention. It equals -noether_quantity for the example 1 generator.
SampledSignal example1_printed_quantity(const FracProblem& prob, const VectorPath& q);

/// Discrete extremal of example 2. The stationarity relations
///   D_left^b q2 = 0, D_left^b q4 = -q2, D_right^b q3 = q4, D_right^b q1 = -q3
/// are imposed row by row with the problem's operators, leaving the four end
/// values q2(a), q4(a), q3(b), q1(b) free. These are fitted so that q1 is the
/// least-squares (minimum-norm) approximation of `seed`.
VectorPath example2_extremal(FracOrder beta, const SampledSignal& seed, Scheme scheme = Scheme::GL);

/// Classical quantity q1 q2 + q3 q4/3 + (q4^2 - 2 q2 q3) t/3 of example 2 at order 1.
SampledSignal example2_classical_quantity(const VectorPath& q);

/// -Lc + dv Lc . v for Lc(t, q, v) = L(t, q, v, -v), with fd_velocity.
SampledSignal euler_energy(const Lagrangian& lag, const VectorPath& q);

/// Catalog: free_particle (d_l^2/2), harmonic ((d_l^2 - q^2)/2), example1, example2.
/// The example Lagrangians do not depend on the order.
Lagrangian builtin_lagrangian(const std::string& name);

/// Catalog: example1, example2, translation (xi_i = 1), time_translation (tau = 1).
/// tau is multiplied by c tau_scale and xi by c xi_scale.
Generator builtin_generator(const std::string& name, std::size_t n, double c = 1.0, double tau_scale = 1.0,
                            double xi_scale = 1.0);

} // namespace fracvar
