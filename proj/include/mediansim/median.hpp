#pragma once

// The relaxed median set of a collection of reals: the middle sorted value
// for odd N, the closed interval between the two middle values for even N.

#include <vector>

#include "mediansim/linalg.hpp"

namespace mediansim {

class ObservationSet {
public:
    /// Throws EmptyObservations for an empty vector, NonFiniteInput for
    /// NaN/inf entries.
    explicit ObservationSet(Vec values);

    const Vec& values() const { return values_; }
    const Vec& sorted() const { return sorted_; }
    int size() const { return static_cast<int>(values_.size()); }
    double max_abs() const;

private:
    Vec values_;
    Vec sorted_;
};

struct MedianSet {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x <= hi; }
};

MedianSet median_set(const ObservationSet& obs);

/// Distance from x to the closed interval [m.lo, m.hi].
double dist_to_median(double x, const MedianSet& m);

/// Sum of absolute deviations, the objective whose minimizer set is the
/// median set.
double median_objective(double x, const ObservationSet& obs);

} // namespace mediansim
