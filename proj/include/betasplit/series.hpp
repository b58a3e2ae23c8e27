#pragma once

#include <complex>
#include <vector>

namespace betasplit {

/// Finite Laurent series c_0 e^L + c_1 e^{L+1} + ... + c_{len-1} e^{L+len-1},
/// known modulo e^{L+len}. Products keep the shorter relative length, so the
/// absolute truncation order is always tracked correctly.
class LaurentSeries {
public:
    using cplx = std::complex<double>;

    LaurentSeries() = default;
    LaurentSeries(int lowest_exponent, std::vector<cplx> coefficients);

    static LaurentSeries constant(cplx c, int length);
    /// e^1 truncated to `length` terms (so exponents 1..length).
    static LaurentSeries variable(int length);

    int lowest_exponent() const { return lowest_; }
    int length() const { return static_cast<int>(coeffs_.size()); }
    /// First exponent not represented.
    int order() const { return lowest_ + length(); }
    const std::vector<cplx>& coefficients() const { return coeffs_; }

    /// Coefficient of e^exponent; zero below the lowest exponent.
    cplx coefficient(int exponent) const;
    cplx residue() const { return coefficient(-1); }

    LaurentSeries truncated(int length) const;
    /// Multiply by e^m.
    LaurentSeries shifted(int m) const;

    LaurentSeries operator*(const LaurentSeries& other) const;
    LaurentSeries operator*(cplx c) const;
    LaurentSeries operator+(const LaurentSeries& other) const;
    LaurentSeries operator-() const;

    /// 1/f. Leading zero coefficients are stripped first; throws
    /// SeriesTruncationError if nothing nonzero remains.
    LaurentSeries reciprocal() const;
    LaurentSeries pow(int k) const;

    /// exp(f) for a Taylor series f (lowest exponent >= 0).
    LaurentSeries exp() const;

private:
    int lowest_ = 0;
    std::vector<cplx> coeffs_;
};

/// Largest |coefficient| of f * f.reciprocal() - 1.
double reciprocal_residual(const LaurentSeries& f);

}  // namespace betasplit
