#pragma once

#include <cstdint>
#include <string>

namespace betasplit::mgf {

/// Unique rho in (-1, 1) with psi(1 + rho) - psi(1) = z, for z < 1.
double rho(double z);

/// -z Gamma(-rho(z)) / psi'(1 + rho(z)); equals 1 at z = 0.
long double mgf_prefactor(double z);

struct MgfApprox {
    double value;
    double rel_error_order;
};

MgfApprox mgf_approx(std::int64_t n, double z);

struct CltParams {
    double mu;
    double sigma2;
    double mu_fd;      // rho'(0) by central difference
    double sigma2_fd;  // rho''(0) by central difference
    bool verified;     // both differences within 1e-6
};

CltParams clt_params();

double x0();  // 1/zeta(2), minimum of the rate function
double x1();  // 1/(zeta(2) - 1), start of the linear branch

struct RateFunctionSample {
    double x;
    double rho_hat;
    double lambda_star;  // +inf for x < 0
    double derivative;
};

RateFunctionSample rate_function(double x);

enum class TailRegime { lower_exact, upper_exact, upper_bound_only };

TailRegime tail_regime(double x);
std::string regime_name(TailRegime r);

}  // namespace betasplit::mgf
