#include "formflow/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace formflow {

bool Box::contains(const Vec& p, double slack) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (p[i] < lo[i] - slack || p[i] > hi[i] + slack) return false;
    return true;
}

Vec Box::center() const {
    Vec c(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
}

Box Box::shrunk(double factor) const {
    Box b;
    b.lo.resize(lo.size());
    b.hi.resize(hi.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        const double c = 0.5 * (lo[i] + hi[i]);
        const double r = 0.5 * (hi[i] - lo[i]) * factor;
        b.lo[i] = c - r;
        b.hi[i] = c + r;
    }
    return b;
}

namespace {
std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed;
    std::uint64_t h = splitmix(x);
    x ^= (index + 1) * 0x9e3779b97f4a7c15ull;
    state_ = h ^ splitmix(x);
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ull;
}

std::uint64_t Rng::next() {
    std::uint64_t x = state_;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    state_ = x;
    return x;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::gaussian() {
    if (haveSpare_) {
        haveSpare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    haveSpare_ = true;
    return r * std::cos(a);
}

Vec Rng::pointIn(const Box& box) {
    Vec p(box.lo.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = uniform(box.lo[i], box.hi[i]);
    return p;
}

Vec Rng::pointOnSubspace(const Box& box, const std::vector<int>& zeroVars) {
    Vec p = pointIn(box);
    for (int z : zeroVars) p[static_cast<std::size_t>(z)] = 0.0;
    return p;
}

Vec Rng::unitDirection(int dim, const std::vector<int>& axes) {
    Vec d(static_cast<std::size_t>(dim), 0.0);
    double n = 0.0;
    while (n < 1e-12) {
        for (int a : axes) d[static_cast<std::size_t>(a)] = gaussian();
        n = norm2(d);
    }
    for (double& x : d) x /= n;
    return d;
}

std::vector<Vec> interiorGrid(const Box& box, int perAxis) {
    const int n = box.dim();
    std::vector<Vec> pts;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    const std::size_t total = [&] {
        std::size_t t = 1;
        for (int i = 0; i < n; ++i) t *= static_cast<std::size_t>(perAxis);
        return t;
    }();
    pts.reserve(total);
    while (true) {
        Vec p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double f = (idx[static_cast<std::size_t>(i)] + 0.5) / perAxis;
            p[static_cast<std::size_t>(i)] = box.lo[static_cast<std::size_t>(i)] +
                f * (box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)]);
        }
        pts.push_back(std::move(p));
        int k = n - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == perAxis) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return pts;
}

std::string formatPoint(const Vec& p) {
    std::string out = "(";
    char buf[40];
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.6g", p[i]);
        if (i) out += ",";
        out += buf;
    }
    out += ")";
    return out;
}

}  // namespace formflow
