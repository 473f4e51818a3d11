#include "pjlab/damping.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pjlab/numfmt.hpp"

namespace pjlab {

DampingProfile DampingProfile::zero() {
    DampingProfile p;
    p.family_ = DampingFamily::zero;
    return p;
}

DampingProfile DampingProfile::constant(double M) {
    if (!(M > 0.0)) throw std::invalid_argument("constant damping requires M > 0");
    DampingProfile p;
    p.family_ = DampingFamily::constant;
    p.M_ = M;
    return p;
}

DampingProfile DampingProfile::saturating(double M, double r) {
    if (!(M > 0.0) || !(r > 0.0))
        throw std::invalid_argument("saturating damping requires M > 0 and r > 0");
    DampingProfile p;
    p.family_ = DampingFamily::saturating;
    p.M_ = M;
    p.r_ = r;
    return p;
}

DampingProfile DampingProfile::exponential(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("exponential damping requires c > 0");
    DampingProfile p;
    p.family_ = DampingFamily::exponential;
    p.c_ = c;
    return p;
}

DampingProfile DampingProfile::tabulated(std::vector<double> t, std::vector<double> a) {
    if (t.size() != a.size() || t.empty())
        throw std::invalid_argument("tabulated damping: need matching nonempty knot arrays");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (a[i] < 0.0) throw std::invalid_argument("tabulated damping: alpha values must be >= 0");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw std::invalid_argument("tabulated damping: knot times must be strictly increasing");
        if (t[i] < 0.0) throw std::invalid_argument("tabulated damping: knot times must be >= 0");
    }
    DampingProfile p;
    p.family_ = DampingFamily::tabulated;
    p.knot_t_ = std::move(t);
    p.knot_a_ = std::move(a);
    p.build_pchip();
    return p;
}

// Fritsch-Carlson monotone cubic slopes; keeps the interpolant inside the
// local data range per segment, so alpha >= 0 is preserved.
void DampingProfile::build_pchip() {
    const std::size_t n = knot_t_.size();
    seg_b_.assign(n > 1 ? n - 1 : 0, 0.0);
    seg_c_.assign(seg_b_.size(), 0.0);
    seg_d_.assign(seg_b_.size(), 0.0);
    if (n < 2) return;

    std::vector<double> h(n - 1), delta(n - 1), m(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = knot_t_[i + 1] - knot_t_[i];
        delta[i] = (knot_a_[i + 1] - knot_a_[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = delta[0];
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0) {
                m[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        auto end_slope = [](double h0, double h1, double d0, double d1) {
            double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (s * d0 <= 0.0) return 0.0;
            if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
            return s;
        };
        m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        seg_b_[i] = m[i];
        seg_c_[i] = (3.0 * delta[i] - 2.0 * m[i] - m[i + 1]) / h[i];
        seg_d_[i] = (m[i] + m[i + 1] - 2.0 * delta[i]) / (h[i] * h[i]);
    }
}

double DampingProfile::alpha(double t) const {
    if (t < 0.0) throw std::domain_error("alpha: requires t >= 0");
    switch (family_) {
        case DampingFamily::zero:
            return 0.0;
        case DampingFamily::constant:
            return M_;
        case DampingFamily::saturating:
            return M_ * -std::expm1(-r_ * t);
        case DampingFamily::exponential:
            return std::exp(c_ * t);
        case DampingFamily::tabulated: {
            if (t <= knot_t_.front()) return knot_a_.front();
            if (t >= knot_t_.back()) return knot_a_.back();
            std::size_t i = 0;
            while (i + 2 < knot_t_.size() && t >= knot_t_[i + 1]) ++i;
            const double s = t - knot_t_[i];
            const double v = knot_a_[i] + s * (seg_b_[i] + s * (seg_c_[i] + s * seg_d_[i]));
            return v < 0.0 ? 0.0 : v;
        }
    }
    return 0.0;
}

double DampingProfile::integral(double t) const {
    if (t < 0.0) throw std::domain_error("alpha integral: requires t >= 0");
    switch (family_) {
        case DampingFamily::zero:
            return 0.0;
        case DampingFamily::constant:
            return M_ * t;
        case DampingFamily::saturating:
            // int_0^t M(1 - e^{-rs}) ds = M(t - (1 - e^{-rt})/r)
            return M_ * (t + std::expm1(-r_ * t) / r_);
        case DampingFamily::exponential:
            // (e^{ct} - 1)/c
            return std::expm1(c_ * t) / c_;
        case DampingFamily::tabulated: {
            double acc = 0.0;
            // constant extension on [0, t_0)
            const double head_end = std::min(t, knot_t_.front());
            if (head_end > 0.0) acc += knot_a_.front() * head_end;
            if (t <= knot_t_.front()) return acc;
            auto seg_integral = [this](std::size_t i, double s) {
                return s * (knot_a_[i] +
                            s * (seg_b_[i] / 2.0 + s * (seg_c_[i] / 3.0 + s * seg_d_[i] / 4.0)));
            };
            for (std::size_t i = 0; i + 1 < knot_t_.size(); ++i) {
                if (t >= knot_t_[i + 1]) {
                    acc += seg_integral(i, knot_t_[i + 1] - knot_t_[i]);
                } else {
                    acc += seg_integral(i, t - knot_t_[i]);
                    return acc;
                }
            }
            // constant extension past the last knot
            acc += knot_a_.back() * (t - knot_t_.back());
            return acc;
        }
    }
    return 0.0;
}

SupBound DampingProfile::sup_bound() const {
    SupBound s;
    switch (family_) {
        case DampingFamily::zero:
            s.undamped = true;
            break;
        case DampingFamily::constant:
        case DampingFamily::saturating:
            s.value = M_;
            break;
        case DampingFamily::exponential:
            s.unbounded = true;
            break;
        case DampingFamily::tabulated: {
            double mx = 0.0;
            for (double a : knot_a_) mx = std::max(mx, a);
            s.value = mx;
            s.tabulated_range_only = true;
            break;
        }
    }
    return s;
}

double DampingProfile::derivative_at_zero() const {
    switch (family_) {
        case DampingFamily::zero:
            return 0.0;
        case DampingFamily::constant:
            return 0.0;
        case DampingFamily::saturating:
            return M_ * r_;
        case DampingFamily::exponential:
            return c_;
        case DampingFamily::tabulated:
            throw std::domain_error("derivative_at_zero: unsupported for tabulated profiles");
    }
    return 0.0;
}

std::string DampingProfile::to_literal() const {
    switch (family_) {
        case DampingFamily::zero:
            return "zero";
        case DampingFamily::constant:
            return "const:" + fmt_double(M_);
        case DampingFamily::saturating:
            return "sat:" + fmt_double(M_) + "," + fmt_double(r_);
        case DampingFamily::exponential:
            return "exp:" + fmt_double(c_);
        case DampingFamily::tabulated:
            return "tab:" + source_path_;
    }
    return "zero";
}

namespace {

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("damping literal: bad " + what + " value '" + s + "'");
    }
}

}  // namespace

DampingProfile parse_damping(const std::string& literal) {
    if (literal == "zero") return DampingProfile::zero();
    const auto colon = literal.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("damping literal: unknown form '" + literal + "'");
    const std::string head = literal.substr(0, colon);
    const std::string rest = literal.substr(colon + 1);
    if (head == "const") return DampingProfile::constant(parse_real(rest, "M"));
    if (head == "exp") return DampingProfile::exponential(parse_real(rest, "c"));
    if (head == "sat") {
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("damping literal: sat needs M,r");
        return DampingProfile::saturating(parse_real(rest.substr(0, comma), "M"),
                                          parse_real(rest.substr(comma + 1), "r"));
    }
    if (head == "tab") {
        std::ifstream in(rest);
        if (!in) throw std::invalid_argument("damping literal: cannot open '" + rest + "'");
        std::vector<double> ts, as;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string tcol, acol;
            if (!std::getline(ls, tcol, ',') || !std::getline(ls, acol)) {
                throw std::invalid_argument("damping table: bad line '" + line + "'");
            }
            try {
                ts.push_back(std::stod(tcol));
                as.push_back(std::stod(acol));
            } catch (const std::exception&) {
                if (first) { first = false; continue; }  // tolerate a header line
                throw std::invalid_argument("damping table: bad line '" + line + "'");
            }
            first = false;
        }
        auto p = DampingProfile::tabulated(std::move(ts), std::move(as));
        p.source_path_ = rest;
        return p;
    }
    throw std::invalid_argument("damping literal: unknown family '" + head + "'");
}

}  // namespace pjlab
