#include "tpi/spatial.hpp"

#include <cmath>
#include <stdexcept>

namespace tpi {

SpaceGrid::SpaceGrid(int dim_, int cells_per_axis) : dim(dim_), I(cells_per_axis) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("SpaceGrid: dim must be 1 or 2");
    if (I < 1) throw std::invalid_argument("SpaceGrid: need at least one cell");
    dx = 1.0 / I;
}

std::array<double, 2> SpaceGrid::center(std::size_t cell) const {
    std::size_t ix = cell % I;
    std::size_t iy = cell / I;
    return {(ix + 0.5) * dx, dim == 2 ? (iy + 0.5) * dx : 0.0};
}

std::string SchemeId::name() const {
    return (family == SchemeFamily::upwind ? "upwind" : "weno") + std::to_string(order);
}

SchemeId SchemeId::parse(const std::string& s) {
    SchemeId id;
    std::string digits;
    if (s.rfind("upwind", 0) == 0) {
        id.family = SchemeFamily::upwind;
        digits = s.substr(6);
    } else if (s.rfind("weno", 0) == 0) {
        id.family = SchemeFamily::weno;
        digits = s.substr(4);
    } else {
        throw std::invalid_argument("unknown spatial scheme '" + s + "'");
    }
    if (digits.size() != 1 || digits[0] < '0' || digits[0] > '9')
        throw std::invalid_argument("unknown spatial scheme '" + s + "'");
    id.order = digits[0] - '0';
    validate(id);
    return id;
}

void validate(const SchemeId& s) {
    bool ok = s.family == SchemeFamily::upwind ? (s.order >= 1 && s.order <= 3)
                                               : (s.order == 2 || s.order == 3);
    if (!ok) throw std::invalid_argument("invalid scheme " + s.name());
}

namespace {

// Interface value f_{i+1/2} from p[-2..2] = f_{i-2..i+2}, upwind side on the left.
inline double reconstruct(const SchemeId& s, const double* p) {
    if (s.family == SchemeFamily::upwind) {
        switch (s.order) {
            case 1: return p[0];
            case 2: return 1.5 * p[0] - 0.5 * p[-1];
            default: return (-p[-1] + 5.0 * p[0] + 2.0 * p[1]) / 6.0;
        }
    }
    if (s.order == 2) {
        double q0 = -0.5 * p[-1] + 1.5 * p[0];
        double q1 = 0.5 * p[0] + 0.5 * p[1];
        double b0 = (p[0] - p[-1]) * (p[0] - p[-1]);
        double b1 = (p[1] - p[0]) * (p[1] - p[0]);
        double a0 = (1.0 / 3.0) / ((weno_epsilon + b0) * (weno_epsilon + b0));
        double a1 = (2.0 / 3.0) / ((weno_epsilon + b1) * (weno_epsilon + b1));
        return (a0 * q0 + a1 * q1) / (a0 + a1);
    }
    double q0 = (2.0 * p[-2] - 7.0 * p[-1] + 11.0 * p[0]) / 6.0;
    double q1 = (-p[-1] + 5.0 * p[0] + 2.0 * p[1]) / 6.0;
    double q2 = (2.0 * p[0] + 5.0 * p[1] - p[2]) / 6.0;
    double t;
    t = p[-2] - 2.0 * p[-1] + p[0];
    double b0 = 13.0 / 12.0 * t * t;
    t = p[-2] - 4.0 * p[-1] + 3.0 * p[0];
    b0 += 0.25 * t * t;
    t = p[-1] - 2.0 * p[0] + p[1];
    double b1 = 13.0 / 12.0 * t * t;
    t = p[-1] - p[1];
    b1 += 0.25 * t * t;
    t = p[0] - 2.0 * p[1] + p[2];
    double b2 = 13.0 / 12.0 * t * t;
    t = 3.0 * p[0] - 4.0 * p[1] + p[2];
    b2 += 0.25 * t * t;
    double a0 = 0.1 / ((weno_epsilon + b0) * (weno_epsilon + b0));
    double a1 = 0.6 / ((weno_epsilon + b1) * (weno_epsilon + b1));
    double a2 = 0.3 / ((weno_epsilon + b2) * (weno_epsilon + b2));
    return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2);
}

constexpr int ghost = 3;

// buf holds n values with `ghost` periodic copies on each side; writes
// scale * (F_{i+1/2} - F_{i-1/2}) into out[i*stride] (accumulating).
void line_kernel(const double* buf, int n, double v, const SchemeId& s, double scale, double* out,
                 std::size_t stride, double* flux) {
    if (v > 0.0) {
        for (int i = -1; i < n; ++i) flux[i + 1] = reconstruct(s, buf + ghost + i);
    } else {
        double mirrored[5];
        for (int i = -1; i < n; ++i) {
            const double* p = buf + ghost + i + 1;
            mirrored[0] = p[2];
            mirrored[1] = p[1];
            mirrored[2] = p[0];
            mirrored[3] = p[-1];
            mirrored[4] = p[-2];
            flux[i + 1] = reconstruct(s, mirrored + 2);
        }
    }
    for (int i = 0; i < n; ++i) out[i * stride] += scale * (flux[i + 1] - flux[i]);
}

void fill_padded(const double* src, std::size_t stride, int n, double* buf) {
    for (int i = 0; i < n; ++i) buf[ghost + i] = src[i * stride];
    for (int g = 0; g < ghost; ++g) {
        buf[g] = buf[ghost + ((g - ghost) % n + n) % n];
        buf[ghost + n + g] = buf[ghost + (g % n)];
    }
}

}  // namespace

std::vector<double> convective_derivative(const std::vector<double>& line, double v, SchemeId scheme,
                                          double dx) {
    validate(scheme);
    const int n = static_cast<int>(line.size());
    std::vector<double> out(n, 0.0);
    if (v == 0.0 || n == 0) return out;
    std::vector<double> buf(n + 2 * ghost), flux(n + 1);
    fill_padded(line.data(), 1, n, buf.data());
    line_kernel(buf.data(), n, v, scheme, v / dx, out.data(), 1, flux.data());
    return out;
}

void add_transport(const double* f, double* out, const SpaceGrid& sg, const VelocityGrid& vg,
                   SchemeId scheme) {
    const int n = sg.I;
    const std::size_t J = vg.size();
    std::vector<double> buf(n + 2 * ghost), flux(n + 1);
    const int lines = sg.dim == 1 ? 1 : n;
    for (int axis = 0; axis < sg.dim; ++axis) {
        // Along x consecutive cells are J apart; along y they are I*J apart.
        const std::size_t stride = axis == 0 ? J : std::size_t(n) * J;
        for (int line = 0; line < lines; ++line) {
            const std::size_t base = axis == 0 ? std::size_t(line) * n * J : std::size_t(line) * J;
            for (std::size_t j = 0; j < J; ++j) {
                double v = vg.nodes[j][axis];
                if (v == 0.0) continue;
                fill_padded(f + base + j, stride, n, buf.data());
                line_kernel(buf.data(), n, v, scheme, -v / sg.dx, out + base + j, stride, flux.data());
            }
        }
    }
}

std::complex<double> fourier_symbol(SchemeId scheme, double v, double zeta, double dx) {
    validate(scheme);
    if (!scheme.linear())
        throw std::invalid_argument("fourier_symbol: nonlinear scheme " + scheme.name() + " has no symbol");
    using C = std::complex<double>;
    const C I1(0.0, 1.0);
    // Interface stencil for v > 0: F_{i+1/2} = sum_k c_k f_{i+k}.
    std::vector<std::pair<int, double>> st;
    switch (scheme.order) {
        case 1: st = {{0, 1.0}}; break;
        case 2: st = {{-1, -0.5}, {0, 1.5}}; break;
        default: st = {{-1, -1.0 / 6.0}, {0, 5.0 / 6.0}, {1, 2.0 / 6.0}}; break;
    }
    C s(0.0, 0.0);
    for (auto [k, c] : st) s += c * std::exp(I1 * (zeta * (v > 0.0 ? k : 1 - k)));
    return -(v / dx) * (1.0 - std::exp(-I1 * zeta)) * s;
}

std::complex<double> fourier_symbol_2d(SchemeId scheme, const std::array<double, 2>& v, double zx,
                                       double zy, double dx) {
    return fourier_symbol(scheme, v[0], zx, dx) + fourier_symbol(scheme, v[1], zy, dx);
}

std::vector<double> weno_weights(int r, const double* f) {
    const double* p = f + 2;
    auto sq = [](double x) { return x * x; };
    std::vector<double> a;
    if (r == 2) {
        a = {(1.0 / 3.0) / sq(weno_epsilon + sq(p[0] - p[-1])),
             (2.0 / 3.0) / sq(weno_epsilon + sq(p[1] - p[0]))};
    } else if (r == 3) {
        double b0 = 13.0 / 12.0 * sq(p[-2] - 2 * p[-1] + p[0]) + 0.25 * sq(p[-2] - 4 * p[-1] + 3 * p[0]);
        double b1 = 13.0 / 12.0 * sq(p[-1] - 2 * p[0] + p[1]) + 0.25 * sq(p[-1] - p[1]);
        double b2 = 13.0 / 12.0 * sq(p[0] - 2 * p[1] + p[2]) + 0.25 * sq(3 * p[0] - 4 * p[1] + p[2]);
        a = {0.1 / sq(weno_epsilon + b0), 0.6 / sq(weno_epsilon + b1), 0.3 / sq(weno_epsilon + b2)};
    } else {
        throw std::invalid_argument("weno_weights: r must be 2 or 3");
    }
    double s = 0.0;
    for (double x : a) s += x;
    for (double& x : a) x /= s;
    return a;
}

}  // namespace tpi
