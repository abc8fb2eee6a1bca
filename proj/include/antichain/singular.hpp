#pragma once

#include <cstdint>
#include <string>

namespace antichain {

enum class SingularKind { salem, minkowski, cantor };

std::string to_string(SingularKind kind);

/// A strictly increasing (or, for cantor, merely monotone) singular
/// function [0,1] -> [0,1] together with its truncation depth.
///
/// `depth` counts binary digits for salem, partial quotients for
/// minkowski and ternary digits for cantor.
struct SingularFunctionSpec {
    SingularKind kind = SingularKind::salem;
    double lambda = 0.25;
    int depth = 52;
    /// Set only by identity_fixture(); allows lambda = 1/2.
    bool non_singular_fixture = false;

    static SingularFunctionSpec salem(double lambda, int depth = 52);
    /// salem(1/2), i.e. f(x) = x. Not singular; for tests and sanity runs.
    static SingularFunctionSpec identity_fixture(int depth = 52);
    static SingularFunctionSpec minkowski(int depth = 52);
    static SingularFunctionSpec cantor(int depth = 33);

    bool strictly_increasing() const noexcept { return kind != SingularKind::cantor; }

    /// Throws ConfigError when the invariants do not hold.
    void validate() const;
};

/// Value of f together with a bound on |value - f(x)|.
struct Evaluation {
    double value = 0.0;
    double error = 0.0;
};

Evaluation eval(const SingularFunctionSpec& spec, double x);

/// (f(b) - f(a)) / (b - a) over the depth-k dyadic cell [a, b) containing x.
double dyadic_slope(const SingularFunctionSpec& spec, double x, int k);

/// Finite-depth stand-in for the full-measure set where f' = 0:
/// x belongs to it when the depth-`depth` dyadic slope is below `eps`.
struct SingularSetProbe {
    int depth = 40;
    double eps = 0.01;

    void validate() const;
};

bool in_singular_set(const SingularFunctionSpec& spec, const SingularSetProbe& probe, double x);

namespace detail {

/// Unchecked evaluation for hot loops; x must lie in [0, 1].
Evaluation eval_unchecked(const SingularFunctionSpec& spec, double x) noexcept;

/// Unchecked slope; x in [0, 1), k <= spec.depth.
double dyadic_slope_unchecked(const SingularFunctionSpec& spec, double x, int k) noexcept;

} // namespace detail

} // namespace antichain
