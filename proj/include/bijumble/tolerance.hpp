#pragma once

#include <algorithm>
#include <cmath>

namespace bijumble
{
    /// Comparison slack for measured-versus-bound checks: a relative part
    /// with an absolute floor.
    struct Tolerance
    {
        double rel = 1e-9;
        double abs = 1e-12;

        auto slack(double bound) const -> double
        {
            return std::max(rel * std::fabs(bound), abs);
        }

        auto leq(double value, double bound) const -> bool { return value <= bound + slack(bound); }
        auto geq(double value, double bound) const -> bool { return value >= bound - slack(bound); }

        /// value strictly beyond bound by more than the slack.
        auto exceeds(double value, double bound) const -> bool { return ! leq(value, bound); }

        friend auto operator== (const Tolerance &, const Tolerance &) -> bool = default;
    };
}
