#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

// Boost 1.74's pchip calls isnan unqualified; make it visible there.
#include <boost/math/special_functions/fpclassify.hpp>
namespace boost::math::interpolators {
using boost::math::isnan;
}
#include <boost/math/interpolators/pchip.hpp>

#include "lobby/errors.hpp"

namespace lobby {

/// Reputational payoff f(tau): strictly increasing on [0,1] with f(0)=0 and
/// f(1)=1. The politician's reputational utility is theta * f(reputation).
///
/// Outside [0,1] the curve is extended linearly with the endpoint slopes. The
/// extension is only reached while root finders probe the analytic
/// continuation of an indifference equation beyond p in [0,1].
class ReputationCurve {
public:
    enum class Kind { Linear, UserSupplied };

    static constexpr double kFiniteDifferenceStep = 1e-6;

    static ReputationCurve linear() { return ReputationCurve{}; }

    static ReputationCurve from_function(std::function<double(double)> f, std::string name) {
        if (!f) throw ModelError("reputation curve: empty function");
        ReputationCurve c;
        c.kind_ = Kind::UserSupplied;
        c.name_ = std::move(name);
        c.f_ = std::make_shared<const std::function<double(double)>>(std::move(f));
        c.validate();
        return c;
    }

    // f(t) = t^k, k > 0.
    static ReputationCurve power(double k) {
        if (!(k > 0.0) || !std::isfinite(k)) throw ModelError("power curve: exponent must be positive");
        if (k == 1.0) return linear();
        std::ostringstream name;
        name << "power:" << k;
        return from_function([k](double t) { return std::pow(t, k); }, name.str());
    }

    // Sampled (tau, f(tau)) table on an ascending grid covering [0,1],
    // interpolated with a monotone piecewise cubic (PCHIP).
    static ReputationCurve from_table(std::vector<double> xs, std::vector<double> ys) {
        if (xs.size() != ys.size() || xs.size() < 2) {
            throw ModelError("curve table: need at least two (tau, f) rows");
        }
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (!(xs[i] > xs[i - 1])) throw ModelError("curve table: tau column must be strictly ascending");
            if (!(ys[i] > ys[i - 1])) throw ModelError("curve table: f column must be strictly increasing");
        }
        if (std::abs(xs.front()) > 1e-12 || std::abs(xs.back() - 1.0) > 1e-12) {
            throw ModelError("curve table: grid must span [0, 1]");
        }
        std::function<double(double)> f;
        if (xs.size() < 4) {
            f = [xs, ys](double t) {
                auto it = std::upper_bound(xs.begin(), xs.end(), t);
                std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - xs.begin()), 1, xs.size() - 1);
                const double w = (t - xs[i - 1]) / (xs[i] - xs[i - 1]);
                return ys[i - 1] + w * (ys[i] - ys[i - 1]);
            };
        } else {
            boost::math::interpolators::pchip<std::vector<double>> spline(std::move(xs), std::move(ys));
            f = [spline](double t) { return spline(std::clamp(t, 0.0, 1.0)); };
        }
        return from_function(std::move(f), "table");
    }

    // Plain-text table: one "tau f" pair per line, '#' starts a comment.
    static ReputationCurve parse_table(std::istream& in) {
        std::vector<double> xs;
        std::vector<double> ys;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream row(line);
            double x = 0.0;
            double y = 0.0;
            if (!(row >> x)) continue;
            if (!(row >> y)) throw ModelError("curve table: missing f value on line " + std::to_string(line_no));
            xs.push_back(x);
            ys.push_back(y);
        }
        return from_table(std::move(xs), std::move(ys));
    }

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    double operator()(double t) const {
        if (kind_ == Kind::Linear) return t;
        if (t < 0.0) return t * slope_at_zero_;
        if (t > 1.0) return 1.0 + (t - 1.0) * slope_at_one_;
        return (*f_)(t);
    }

    // f'(t): analytic for the linear curve, centered finite differences
    // otherwise (one-sided within one step of the ends).
    double derivative(double t) const {
        if (kind_ == Kind::Linear) return 1.0;
        const double h = kFiniteDifferenceStep;
        if (t - h < 0.0) return ((*this)(t + h) - (*this)(t)) / h;
        if (t + h > 1.0) return ((*this)(t) - (*this)(t - h)) / h;
        return ((*this)(t + h) - (*this)(t - h)) / (2.0 * h);
    }

private:
    ReputationCurve() = default;

    void validate() {
        const double f0 = (*f_)(0.0);
        const double f1 = (*f_)(1.0);
        if (!(std::abs(f0) <= 1e-9) || !(std::abs(f1 - 1.0) <= 1e-9)) {
            throw ModelError("reputation curve '" + name_ + "': requires f(0)=0 and f(1)=1");
        }
        constexpr int kGrid = 1000;
        double prev = f0;
        for (int i = 1; i <= kGrid; ++i) {
            const double v = (*f_)(static_cast<double>(i) / kGrid);
            if (!std::isfinite(v) || !(v > prev)) {
                throw ModelError("reputation curve '" + name_ + "': not strictly increasing");
            }
            prev = v;
        }
        const double h = kFiniteDifferenceStep;
        slope_at_zero_ = ((*f_)(h) - f0) / h;
        slope_at_one_ = (f1 - (*f_)(1.0 - h)) / h;
    }

    Kind kind_ = Kind::Linear;
    std::string name_ = "linear";
    std::shared_ptr<const std::function<double(double)>> f_;
    double slope_at_zero_ = 1.0;
    double slope_at_one_ = 1.0;
};

} // namespace lobby
