#pragma once

namespace pathbudget::detail {

// Kahan compensated accumulator. Keeps long fixed-order reductions accurate;
// the order itself never changes, so results stay reproducible.
class KahanSum {
public:
    void add(double term) noexcept {
        const double adjusted = term - carry_;
        const double next = sum_ + adjusted;
        carry_ = (next - sum_) - adjusted;
        sum_ = next;
    }

    [[nodiscard]] double value() const noexcept { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace pathbudget::detail
