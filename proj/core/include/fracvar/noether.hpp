#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracvar/problem.hpp"

namespace fracvar {

/// Where a generator is evaluated: node index and time.
struct NodePoint {
    std::size_t index;
    double t;
};

/// Infinitesimal generator (tau, xi) of t -> t + eps tau, q -> q + eps xi.
class Generator {
public:
    using Tau = std::function<double(NodePoint, std::span<const double> q)>;
    using Xi = std::function<void(NodePoint, std::span<const double> q, std::span<double> out)>;

    /// A null tau means tau = 0.
    Generator(std::size_t n, Tau tau, Xi xi);

    std::size_t dim() const noexcept { return n_; }
    bool has_time_change() const noexcept { return static_cast<bool>(tau_); }

    double tau(NodePoint p, std::span<const double> q) const { return tau_ ? tau_(p, q) : 0.0; }
    std::vector<double> xi(NodePoint p, std::span<const double> q) const;

    /// tau and xi sampled along a path; masked where q is.
    SampledSignal tau_signal(const VectorPath& q) const;
    VectorPath xi_path(const VectorPath& q) const;

private:
    std::size_t n_;
    Tau tau_;
    Xi xi_;
};

/// -g D_right^gamma f + f D_left^gamma g; reduces to (fg)' at gamma = 1.
SampledSignal d_gamma(const SampledSignal& f, const SampledSignal& g, FracOrder gamma, Scheme scheme = Scheme::GL);

/// Forward: the pair (c1, c2) is checked as D(c1, c2); Reversed: as D(c2, c1).
enum class Orientation { Forward, Reversed };

const char* to_string(Orientation o) noexcept;

struct Pair {
    SampledSignal c1;
    SampledSignal c2;
    FracOrder gamma;
    Orientation orientation = Orientation::Forward;
    std::string label;
};

/// Candidate product structure C = sum_i c1_i c2_i of a conserved quantity.
struct Decomposition {
    std::vector<Pair> pairs;
};

/// The oriented operator of one pair.
SampledSignal pair_defect_signal(const Pair& p, Scheme scheme = Scheme::GL);

/// Max-abs over valid interior nodes inside `window` of
/// dq L . xi + d_l L . D_left^alpha xi + d_r L . D_right^beta xi.
/// Requires a generator without time change.
double invariance_defect(const FracProblem& prob, const VectorPath& q, const Generator& gen,
                         std::optional<Window> window = std::nullopt);

struct NoTimeQuantity {
    SampledSignal quantity;
    Decomposition decomposition;
};

/// (d_l L - d_r L) . xi together with the pairs (d_l L_i, xi_i, alpha) and
/// (xi_i, -d_r L_i, beta). Requires a generator without time change.
NoTimeQuantity noether_quantity_no_time(const FracProblem& prob, const VectorPath& q, const Generator& gen);

/// L - alpha d_l L . D_left^alpha q - beta d_r L . D_right^beta q along the path.
SampledSignal tau_bracket(const FracProblem& prob, const VectorPath& q);

/// (d_l L - d_r L) . xi + [L - alpha d_l L . d_l - beta d_r L . d_r] tau.
SampledSignal noether_quantity(const FracProblem& prob, const VectorPath& q, const Generator& gen);

/// Pointwise form of noether_quantity for given slot values.
double noether_density(const Lagrangian& lag, double alpha, double beta, double t, std::span<const double> q,
                       std::span<const double> dl, std::span<const double> dr, double tau,
                       std::span<const double> xi);

struct VerifyOptions {
    double tol = 5e-2;
    /// Fraction of [a, b] dropped at each end for the windowed defects.
    double trim = 0.1;
    Scheme scheme = Scheme::GL;
};

struct PairReport {
    std::string label;
    double gamma;
    Orientation orientation;
    /// Max-abs over valid interior nodes in the trim window.
    double window_defect;
    /// Max-abs over all valid interior nodes.
    double global_defect;
    SampledSignal defect;
};

struct ConservationReport {
    std::vector<PairReport> pairs;
    double reconstruction_error = 0.0;
    double tol = 0.0;
    Window window{0.0, 0.0};
    bool pass = false;
    /// Parts of the claimed quantity that no pair covers.
    std::vector<std::string> unverified;
};

/// pass iff every windowed pair defect and the reconstruction error are <= tol.
/// Throws DomainError for an empty decomposition or mixed grids.
ConservationReport verify_fractional_conserved(const Decomposition& dec, const SampledSignal& target,
                                               const VerifyOptions& opts = {});

/// Conservation check of the Noether quantity of `gen` along q. Without time
/// change the canonical pairs are used. With time change the caller's
/// decomposition is checked against the full quantity when given; otherwise the
/// xi-part is checked with the canonical pairs and the tau-term is listed as
/// unverified.
ConservationReport verify_noether(const FracProblem& prob, const VectorPath& q, const Generator& gen,
                                  const std::optional<Decomposition>& user = std::nullopt,
                                  const VerifyOptions& opts = {});

/// Max-abs of the central difference (C[k+1] - C[k-1]) / 2h over interior nodes
/// (inside `window` when given) whose neighbours are valid.
double classical_conservation_defect(const SampledSignal& c, std::optional<Window> window = std::nullopt);

/// Classical Noether quantity dv Lc . xi + (Lc - dv Lc . v) tau for the
/// integer-order Lagrangian Lc(t, q, v) = L(t, q, v, -v).
double teonet_density(const Lagrangian& lag, double t, std::span<const double> q, std::span<const double> v,
                      double tau, std::span<const double> xi);

/// Finite-difference velocities: central inside, second-order one-sided at the ends.
VectorPath fd_velocity(const VectorPath& q);

/// teonet_density along a path with fd_velocity.
SampledSignal classical_noether_quantity(const Lagrangian& lag, const VectorPath& q, const Generator& gen);

} // namespace fracvar
