#include "antichain/singular.hpp"

#include "antichain/errors.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace antichain {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Salem / Lebesgue function: digit 0 keeps the left lambda-share of the
// current value interval, digit 1 moves into the right (1 - lambda)-share.
// Digits are read from the exact binary expansion of x; the scan stops at
// the last 1-digit, since a zero tail contributes L(0) = 0.
Evaluation eval_salem(double lambda, int depth, double x) noexcept {
    const double scaled = std::ldexp(x, depth);
    const double head = std::floor(scaled);
    const auto digits = static_cast<std::uint64_t>(head);
    const bool exact = scaled == head;
    const int used = exact ? (digits == 0 ? 0 : depth - std::countr_zero(digits)) : depth;

    const double share[2] = {lambda, 1.0 - lambda};
    const double offset[2] = {0.0, lambda};
    double v = 0.0;
    double s = 1.0;
    for (int i = 0; i < used; ++i) {
        const auto b = static_cast<std::size_t>((digits >> (depth - 1 - i)) & 1U);
        v += s * offset[b];
        s *= share[b];
    }
    return {v, (exact ? 0.0 : s) + used * kEps};
}

__extension__ using u128 = unsigned __int128;

// Minkowski ?(x) = 2 * sum_k (-1)^(k+1) 2^-(a_1 + ... + a_k) over the
// continued fraction [0; a_1, a_2, ...]. A double is a dyadic rational
// m / 2^e, so the expansion is computed exactly by Euclid's algorithm.
Evaluation eval_minkowski(int depth, double x) noexcept {
    int exp2 = 0;
    const double mant = std::frexp(x, &exp2); // x = mant * 2^exp2, mant in [0.5, 1)
    const int e = 53 - exp2;                  // x = m / 2^e with m = mant * 2^53
    if (e > 127) {
        // x < 2^-74: ?(x) < 2^(1 - floor(1/x)) underflows.
        return {0.0, std::numeric_limits<double>::denorm_min()};
    }
    u128 p = static_cast<u128>(static_cast<std::uint64_t>(std::ldexp(mant, 53)));
    u128 q = static_cast<u128>(1) << e;
    while ((p & 1) == 0 && (q & 1) == 0) {
        p >>= 1;
        q >>= 1;
    }

    constexpr long long kUnderflow = 1100; // 2^-1100 is below every subnormal
    double sum = 0.0;
    long long exponent = 0;
    int sign = 1;
    int terms = 0;
    while (p != 0 && terms < depth) {
        const u128 a = q / p;
        const u128 rem = q - a * p;
        q = p;
        p = rem;
        exponent += (a > static_cast<u128>(kUnderflow)) ? kUnderflow : static_cast<long long>(a);
        ++terms;
        if (exponent >= kUnderflow) {
            p = 0;
            break;
        }
        sum += sign * std::ldexp(2.0, static_cast<int>(-exponent));
        sign = -sign;
    }
    // Alternating tail is bounded by the first omitted term 2^(1 - S_{m+1}) <= 2^-S_m.
    const double truncation = (p == 0) ? 0.0 : std::ldexp(1.0, static_cast<int>(-exponent));
    return {sum, truncation + terms * kEps};
}

// Cantor staircase from the ternary digits of x; stops at the first digit 1.
Evaluation eval_cantor(int depth, double x) noexcept {
    double v = 0.0;
    double w = 0.5;
    double r = x;
    for (int i = 0; i < depth; ++i) {
        r *= 3.0;
        const double d = std::floor(r);
        r -= d;
        if (d >= 2.0) {
            v += w;
        } else if (d >= 1.0) {
            return {v + w, depth * kEps};
        }
        w *= 0.5;
    }
    return {v, 2.0 * w + depth * kEps};
}

std::uint64_t leading_bits(double x, int k) noexcept {
    return static_cast<std::uint64_t>(std::ldexp(x, k));
}

} // namespace

std::string to_string(SingularKind kind) {
    switch (kind) {
    case SingularKind::salem:
        return "salem";
    case SingularKind::minkowski:
        return "minkowski";
    case SingularKind::cantor:
        return "cantor";
    }
    return "unknown";
}

SingularFunctionSpec SingularFunctionSpec::salem(double lambda, int depth) {
    SingularFunctionSpec s{SingularKind::salem, lambda, depth, false};
    s.validate();
    return s;
}

SingularFunctionSpec SingularFunctionSpec::identity_fixture(int depth) {
    SingularFunctionSpec s{SingularKind::salem, 0.5, depth, true};
    s.validate();
    return s;
}

SingularFunctionSpec SingularFunctionSpec::minkowski(int depth) {
    SingularFunctionSpec s{SingularKind::minkowski, 0.0, depth, false};
    s.validate();
    return s;
}

SingularFunctionSpec SingularFunctionSpec::cantor(int depth) {
    SingularFunctionSpec s{SingularKind::cantor, 0.0, depth, false};
    s.validate();
    return s;
}

void SingularFunctionSpec::validate() const {
    if (depth < 1 || depth > 63) {
        throw ConfigError("depth must lie in [1, 63], got " + std::to_string(depth));
    }
    if (kind == SingularKind::salem) {
        if (!(lambda > 0.0 && lambda < 1.0)) {
            throw ConfigError("salem lambda must lie in (0, 1)");
        }
        if (lambda == 0.5 && !non_singular_fixture) {
            throw ConfigError("salem lambda = 1/2 is the identity, not singular; use identity_fixture()");
        }
        if (non_singular_fixture && lambda != 0.5) {
            throw ConfigError("non-singular fixture flag requires lambda = 1/2");
        }
    } else if (non_singular_fixture) {
        throw ConfigError("non-singular fixture flag is only meaningful for salem");
    }
}

void SingularSetProbe::validate() const {
    if (depth < 1) {
        throw ConfigError("probe depth must be >= 1");
    }
    if (!(eps > 0.0)) {
        throw ConfigError("probe eps must be > 0");
    }
}

namespace detail {

Evaluation eval_unchecked(const SingularFunctionSpec& spec, double x) noexcept {
    if (x <= 0.0) {
        return {0.0, 0.0};
    }
    if (x >= 1.0) {
        return {1.0, 0.0};
    }
    switch (spec.kind) {
    case SingularKind::salem:
        return eval_salem(spec.lambda, spec.depth, x);
    case SingularKind::minkowski:
        return eval_minkowski(spec.depth, x);
    case SingularKind::cantor:
        return eval_cantor(spec.depth, x);
    }
    return {};
}

double dyadic_slope_unchecked(const SingularFunctionSpec& spec, double x, int k) noexcept {
    // Leading k binary digits of x, dyadic rationals taking the expansion ending in zeros.
    const std::uint64_t cell = leading_bits(x, k);
    if (spec.kind == SingularKind::salem) {
        const int ones = std::popcount(cell);
        const int zeros = k - ones;
        const double log_slope =
            zeros * std::log(2.0 * spec.lambda) + ones * std::log(2.0 * (1.0 - spec.lambda));
        return std::exp(log_slope);
    }
    const double a = std::ldexp(static_cast<double>(cell), -k);
    const double b = std::ldexp(static_cast<double>(cell + 1), -k);
    const double rise = eval_unchecked(spec, b).value - eval_unchecked(spec, a).value;
    return std::ldexp(rise > 0.0 ? rise : 0.0, k);
}

} // namespace detail

Evaluation eval(const SingularFunctionSpec& spec, double x) {
    spec.validate();
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("eval: x must lie in [0, 1]");
    }
    return detail::eval_unchecked(spec, x);
}

double dyadic_slope(const SingularFunctionSpec& spec, double x, int k) {
    spec.validate();
    if (!(x > 0.0 && x < 1.0)) {
        throw DomainError("dyadic_slope: x must lie in (0, 1)");
    }
    if (k < 1) {
        throw DomainError("dyadic_slope: k must be >= 1");
    }
    if (k > spec.depth) {
        throw PrecisionError("dyadic_slope: k = " + std::to_string(k) + " exceeds spec depth " +
                             std::to_string(spec.depth));
    }
    return detail::dyadic_slope_unchecked(spec, x, k);
}

bool in_singular_set(const SingularFunctionSpec& spec, const SingularSetProbe& probe, double x) {
    probe.validate();
    return dyadic_slope(spec, x, probe.depth) < probe.eps;
}

} // namespace antichain
