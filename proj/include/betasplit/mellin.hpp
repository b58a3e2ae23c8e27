#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "betasplit/specfun.hpp"

namespace betasplit::mellin {

using cplx = std::complex<double>;

/// Removable singularities are evaluated from Taylor data inside this radius.
inline constexpr double kTaylorRadius = 1e-3;

struct ContourSpec {
    double sigma = -0.5;
    double tail_cutoff = 1e4;
    double abs_tol = 1e-10;
    int max_panels = 20000;
};

/// The MGF contour uses sigma_star by default.
ContourSpec default_mgf_contour();

struct ContourResult {
    double value = 0.0;
    double est_error = 0.0;
    int panels = 0;
    double tail = 0.0;           // contribution of [T, inf)
    double tail_envelope = 0.0;  // |integrand(T)| * T
};

enum class Kind { ED, EL, ELambda, MomentK };

std::string kind_name(Kind kind);
Kind parse_kind(const std::string& name);

/// k! (psi(s) - psi(1))^{-k}.
cplx mellin_U(cplx s, int k);
/// mellin_U(s, 1) - (6/pi^2)/(s - 1), finite at s = 1.
cplx mellin_U_remainder(cplx s);

cplx mellin_fn(cplx s, std::int64_t n);
cplx mellin_Hn(cplx s, std::int64_t n);
cplx mellin_lambda(cplx s, std::int64_t n);

struct DensityValue {
    double value;
    double remainder_bound_order;
};

/// Expansion of the density of the measure on (0, 1/2).
DensityValue density_u(double x, int N, const specfun::RootTable& roots);

ContourResult line_expectation(Kind kind, std::int64_t n, int k, const ContourSpec& spec = {});

struct MgfContourResult {
    double value = 0.0;
    double residue_term = 0.0;
    ContourResult remainder;  // the line-integral part, already scaled by -z/pi
};

MgfContourResult line_mgf(std::int64_t n, double z, const ContourSpec& spec = default_mgf_contour());

}  // namespace betasplit::mellin
