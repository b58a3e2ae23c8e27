#include "betasplit/series.hpp"

#include <algorithm>
#include <cmath>

#include "betasplit/errors.hpp"

namespace betasplit {

LaurentSeries::LaurentSeries(int lowest_exponent, std::vector<cplx> coefficients)
    : lowest_(lowest_exponent), coeffs_(std::move(coefficients)) {}

LaurentSeries LaurentSeries::constant(cplx c, int length) {
    std::vector<cplx> v(static_cast<std::size_t>(std::max(length, 1)), cplx(0.0));
    v[0] = c;
    return LaurentSeries(0, std::move(v));
}

LaurentSeries LaurentSeries::variable(int length) {
    std::vector<cplx> v(static_cast<std::size_t>(std::max(length, 1)), cplx(0.0));
    v[0] = 1.0;
    return LaurentSeries(1, std::move(v));
}

LaurentSeries::cplx LaurentSeries::coefficient(int exponent) const {
    const int idx = exponent - lowest_;
    if (idx < 0) return 0.0;
    if (idx >= length()) throw SeriesTruncationError("coefficient requested beyond truncation order");
    return coeffs_[static_cast<std::size_t>(idx)];
}

LaurentSeries LaurentSeries::truncated(int length) const {
    std::vector<cplx> v(coeffs_.begin(), coeffs_.begin() + std::min(length, this->length()));
    return LaurentSeries(lowest_, std::move(v));
}

LaurentSeries LaurentSeries::shifted(int m) const { return LaurentSeries(lowest_ + m, coeffs_); }

LaurentSeries LaurentSeries::operator*(const LaurentSeries& other) const {
    const int len = std::min(length(), other.length());
    std::vector<cplx> v(static_cast<std::size_t>(len), cplx(0.0));
    for (int i = 0; i < len; ++i) {
        for (int j = 0; i + j < len; ++j) {
            v[static_cast<std::size_t>(i + j)] += coeffs_[static_cast<std::size_t>(i)] * other.coeffs_[static_cast<std::size_t>(j)];
        }
    }
    return LaurentSeries(lowest_ + other.lowest_, std::move(v));
}

LaurentSeries LaurentSeries::operator*(cplx c) const {
    LaurentSeries out = *this;
    for (auto& x : out.coeffs_) x *= c;
    return out;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& other) const {
    const int low = std::min(lowest_, other.lowest_);
    const int ord = std::min(order(), other.order());
    std::vector<cplx> v(static_cast<std::size_t>(std::max(ord - low, 0)), cplx(0.0));
    for (int e = low; e < ord; ++e) {
        cplx c = 0.0;
        if (e >= lowest_) c += coeffs_[static_cast<std::size_t>(e - lowest_)];
        if (e >= other.lowest_) c += other.coeffs_[static_cast<std::size_t>(e - other.lowest_)];
        v[static_cast<std::size_t>(e - low)] = c;
    }
    return LaurentSeries(low, std::move(v));
}

LaurentSeries LaurentSeries::operator-() const { return *this * cplx(-1.0); }

LaurentSeries LaurentSeries::reciprocal() const {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == cplx(0.0)) ++lead;
    if (lead == coeffs_.size()) throw SeriesTruncationError("reciprocal of a series with no nonzero coefficient");
    const int len = length() - static_cast<int>(lead);
    const cplx* a = coeffs_.data() + lead;
    std::vector<cplx> b(static_cast<std::size_t>(len), cplx(0.0));
    b[0] = 1.0 / a[0];
    for (int m = 1; m < len; ++m) {
        cplx acc = 0.0;
        for (int j = 1; j <= m; ++j) acc += a[j] * b[static_cast<std::size_t>(m - j)];
        b[static_cast<std::size_t>(m)] = -acc * b[0];
    }
    return LaurentSeries(-(lowest_ + static_cast<int>(lead)), std::move(b));
}

LaurentSeries LaurentSeries::pow(int k) const {
    if (k < 0) return reciprocal().pow(-k);
    LaurentSeries result = constant(1.0, length());
    for (int i = 0; i < k; ++i) result = result * *this;
    return result;
}

LaurentSeries LaurentSeries::exp() const {
    if (lowest_ < 0) throw SeriesTruncationError("exp of a series with negative exponents");
    const int len = order();  // absolute truncation order, terms e^0..e^{len-1}
    std::vector<cplx> f(static_cast<std::size_t>(len), cplx(0.0));
    for (int e = lowest_; e < len; ++e) f[static_cast<std::size_t>(e)] = coeffs_[static_cast<std::size_t>(e - lowest_)];
    const cplx c0 = f[0];
    // g = exp(f - f0) via g' = f' g.
    std::vector<cplx> g(static_cast<std::size_t>(len), cplx(0.0));
    g[0] = 1.0;
    for (int m = 1; m < len; ++m) {
        cplx acc = 0.0;
        for (int j = 1; j <= m; ++j) acc += static_cast<double>(j) * f[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(m - j)];
        g[static_cast<std::size_t>(m)] = acc / static_cast<double>(m);
    }
    const cplx scale = std::exp(c0);
    for (auto& x : g) x *= scale;
    return LaurentSeries(0, std::move(g));
}

double reciprocal_residual(const LaurentSeries& f) {
    const LaurentSeries p = f * f.reciprocal();
    double worst = 0.0;
    for (int e = p.lowest_exponent(); e < p.order(); ++e) {
        const std::complex<double> target = (e == 0) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(p.coefficient(e) - target));
    }
    return worst;
}

}  // namespace betasplit
