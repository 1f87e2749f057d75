#include "pqnewton/logistic.hpp"

#include <stdexcept>

namespace pqn {

double LogisticSequence::next() noexcept {
    const double sq = xi_ * xi_;
    xi_ = 1.0 - 2.0 * sq;
    ++k_;
    return xi_;
}

double LogisticSequence::advance_to(std::uint64_t k) {
    if (k < k_) throw std::invalid_argument("LogisticSequence: cannot rewind");
    while (k_ < k) next();
    return xi_;
}

}  // namespace pqn
