#pragma once

#include <cstdint>

namespace pqn {

/// Chaotic logistic recurrence xi_k = 1 - 2 xi_{k-1}^2 started at xi_0 = 0.4.
///
/// The map sends [-1, 1] into itself. Values depend on exact IEEE rounding of
/// 1 - 2*x*x; builds must not contract it into a fused multiply-add.
class LogisticSequence {
public:
    static constexpr double kSeed = 0.4;

    double value() const noexcept { return xi_; }
    std::uint64_t step() const noexcept { return k_; }

    /// Advances one step and returns the new value.
    double next() noexcept;

    /// Advances until step() == k and returns that value; k must not be in
    /// the past.
    double advance_to(std::uint64_t k);

private:
    double xi_ = kSeed;
    std::uint64_t k_ = 0;
};

inline double logistic_next(LogisticSequence& state) noexcept { return state.next(); }

}  // namespace pqn
