#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "repeatkit/numerics.hpp"

namespace repeatkit::numerics {

namespace {

// 15-point Kronrod abscissae; odd indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const Integrand& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) throw DomainError("integrate: integrand is not finite on the interval");
    return y;
}

// QUADPACK qk15 error model.
Segment kronrod15(const Integrand& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(f, center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);
    std::array<double, 7> fv1{};
    std::array<double, 7> fv2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = checked(f, center - dx);
        const double f2 = checked(f, center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    }
    const double ah = std::fabs(half);
    resk *= half;
    resabs *= ah;
    resasc *= ah;
    double err = std::fabs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk, err};
}

}  // namespace

QuadratureResult integrate_detailed(const Integrand& f, double lower, double upper,
                                    const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1) {
        throw DomainError("integrate: tolerances must be positive and max_subdivisions >= 1");
    }
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
        throw DomainError("integrate: need finite lower < upper");
    }

    std::priority_queue<Segment> heap;
    const Segment first = kronrod15(f, lower, upper);
    heap.push(first);
    double total = first.value;
    double total_err = first.error;
    int subdivisions = 1;

    auto done = [&] { return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };
    while (!done()) {
        if (subdivisions >= spec.max_subdivisions) {
            throw ConvergenceError("integrate: subdivision budget exhausted", total, total_err);
        }
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw ConvergenceError("integrate: interval cannot be subdivided further", total, total_err);
        }
        heap.pop();
        const Segment left = kronrod15(f, worst.a, mid);
        const Segment right = kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum from the segments to shed the drift of incremental updates.
    double value = 0.0;
    double error = 0.0;
    std::vector<Segment> segments;
    segments.reserve(heap.size());
    while (!heap.empty()) {
        segments.push_back(heap.top());
        heap.pop();
    }
    std::sort(segments.begin(), segments.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    for (const auto& s : segments) {
        value += s.value;
        error += s.error;
    }
    return {value, error, subdivisions};
}

}  // namespace repeatkit::numerics
