#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "formflow/linalg.hpp"

namespace formflow {

// Axis-aligned chart domain box.
struct Box {
    Vec lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const Vec& p, double slack = 0.0) const;
    Vec center() const;
    Box shrunk(double factor) const;  // same center, scaled extents
};

// Deterministic 64-bit generator (splitmix-seeded xorshift). The standard
// distributions are implementation-defined, so uniforms are derived from the
// raw bits directly; reports stay byte-identical for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    // Independent stream `index` of a base seed.
    Rng(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next();
    double uniform();                       // [0, 1)
    double uniform(double a, double b);     // [a, b)
    double gaussian();                      // Box-Muller with a spare slot

    Vec pointIn(const Box& box);
    // Random point of the coordinate subspace {vars in zeroVars = 0} inside box.
    Vec pointOnSubspace(const Box& box, const std::vector<int>& zeroVars);
    // Random unit vector supported on the given coordinate axes.
    Vec unitDirection(int dim, const std::vector<int>& axes);

private:
    std::uint64_t state_;
    bool haveSpare_ = false;
    double spare_ = 0.0;
};

// Uniform interior grid: per-axis nodes at lo + (i + 1/2) * (hi - lo) / n.
// Interior placement keeps samples off box faces, where scenario forms are
// allowed to degenerate.
std::vector<Vec> interiorGrid(const Box& box, int perAxis);

std::string formatPoint(const Vec& p);

}  // namespace formflow
