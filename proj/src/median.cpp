#include "mediansim/median.hpp"

#include <algorithm>
#include <cmath>

#include "mediansim/error.hpp"

namespace mediansim {

ObservationSet::ObservationSet(Vec values) : values_(std::move(values)) {
    if (values_.empty()) fail(ErrorCode::EmptyObservations, "observation set is empty");
    for (double v : values_)
        if (!std::isfinite(v)) fail(ErrorCode::NonFiniteInput, "non-finite observation");
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
}

double ObservationSet::max_abs() const {
    return std::max(std::abs(sorted_.front()), std::abs(sorted_.back()));
}

MedianSet median_set(const ObservationSet& obs) {
    const int n = obs.size();
    const Vec& s = obs.sorted();
    if (n % 2 == 1) {
        const double m = s[(n - 1) / 2];
        return {m, m};
    }
    return {s[n / 2 - 1], s[n / 2]};
}

double dist_to_median(double x, const MedianSet& m) {
    if (m.contains(x)) return 0.0;
    return std::min(std::abs(x - m.lo), std::abs(x - m.hi));
}

double median_objective(double x, const ObservationSet& obs) {
    double acc = 0.0;
    for (double v : obs.values()) acc += std::abs(v - x);
    return acc;
}

} // namespace mediansim
