#include "betasplit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "betasplit/errors.hpp"

namespace betasplit::quad {

namespace {

constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[static_cast<std::size_t>(j)];
        const double sum = f(c - dx) + f(c + dx);
        kron += kWgk[static_cast<std::size_t>(j)] * sum;
        if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * sum;
    }
    kron *= h;
    gauss *= h;
    return Panel{a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_panels,
                     const std::vector<double>& breaks) {
    std::priority_queue<Panel> heap;
    double total = 0.0, err = 0.0;
    int panels = 0;
    double left = a;
    std::vector<double> points = breaks;
    points.push_back(b);
    for (double p : points) {
        if (p <= left || p > b) continue;
        Panel q = gk15(f, left, p);
        total += q.value;
        err += q.error;
        heap.push(q);
        ++panels;
        left = p;
    }
    while (err > abs_tol) {
        if (panels >= max_panels) {
            throw NonconvergenceError("quadrature: max_panels exhausted (error estimate " + std::to_string(err) + ")");
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel l = gk15(f, worst.a, mid);
        Panel r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++panels;
    }
    // Re-sum in a fixed order so the result does not depend on the
    // accumulated rounding of the running updates.
    std::vector<Panel> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    total = 0.0;
    err = 0.0;
    for (const Panel& p : all) {
        total += p.value;
        err += p.error;
    }
    return QuadResult{total, err, panels};
}

QuadResult integrate_tail(const std::function<double(double)>& f, double T, double abs_tol, int max_panels) {
    auto g = [&f, T](double u) {
        const double tau = T / u;
        return f(tau) * T / (u * u);
    };
    return integrate(g, 0.0, 1.0, abs_tol, max_panels, {1e-6, 1e-4, 1e-2, 0.1});
}

}  // namespace betasplit::quad
