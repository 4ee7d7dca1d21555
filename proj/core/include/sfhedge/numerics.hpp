#ifndef SFHEDGE_NUMERICS_HPP
#define SFHEDGE_NUMERICS_HPP

#include <cfloat>
#include <cmath>

namespace sfhedge {

/// Kahan compensated accumulator. Path and scenario sums can have up to
/// 2^16 * |signals| terms; plain summation is not good enough for the
/// 1e-12 budgets and probability checks used throughout.
class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// Slack for comparisons between the same quantity accumulated in two
/// different summation orders (a few ulps of the larger magnitude).
inline double summation_slack(double a, double b) {
    double m = std::fmax(std::fabs(a), std::fabs(b));
    return 4.0 * DBL_EPSILON * std::fmax(1.0, m);
}

} // namespace sfhedge

#endif
