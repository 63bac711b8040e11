#pragma once

#include "prfair/core.hpp"
#include "prfair/random.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace prfair::io {

using GeneratorParams = std::map<std::string, double>;

namespace detail {

inline double param(const GeneratorParams& params, const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

inline std::size_t count_param(const GeneratorParams& params, const std::string& key, std::size_t fallback) {
    const double value = param(params, key, static_cast<double>(fallback));
    if (value < 0.0 || value != std::floor(value)) {
        throw InputError("parameter '" + key + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(value);
}

inline std::vector<Point> ring(double cx, double cy, double radius, std::size_t count) {
    std::vector<Point> pts;
    for (std::size_t j = 0; j < count; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
        pts.push_back(Point{cx + radius * std::cos(angle), cy + radius * std::sin(angle)});
    }
    return pts;
}

inline Point polar(double cx, double cy, double radius, double degrees) {
    const double angle = degrees * std::numbers::pi / 180.0;
    return Point{cx + radius * std::cos(angle), cy + radius * std::sin(angle)};
}

}  // namespace detail

/// Named instance families. All except gaussian_mixture are fixed geometry; gaussian_mixture
/// draws from a seeded generator. Every family accepts "k" to override its default.
///
///   two_mass(a=100, b=10, k=11)       a agents at 0 and b agents at 1 on the line
///   hexagon(midpoints=1, k=3)         two equilateral triangles, circumradius 0.5, centers 5 apart;
///                                     with midpoints=1 the candidates are the six agents followed by
///                                     the 15 pairwise midpoints, otherwise the agents themselves
///   three_circles(m=12, k=3)          m points on each of two radius-0.3 circles centred at (0, +-0.5)
///                                     and m on a radius-1 circle centred at (6, 0)
///   prf2_counterexample(k=2)          agents (0,0,1,1), candidates (0,0.5,0.5,1)
///   two_blobs(m=5, separation=10, spread=0, k=2)
///                                     m agents around (0,0) and m around (separation,0); spread > 0
///                                     places each blob evenly on a circle of that radius
///   grid_uniform(rows=4, cols=4, spacing=1, k=4)
///   gaussian_mixture(components=3, per_component=100, separation=8, sigma=1, seed=1, k=3)
///                                     isotropic 2-D Gaussians centred on a circle of radius separation
inline Instance generate(const std::string& name, const GeneratorParams& params = {}) {
    using detail::count_param;
    using detail::param;
    if (name == "two_mass") {
        const std::size_t  a = count_param(params, "a", 100);
        const std::size_t  b = count_param(params, "b", 10);
        std::vector<Point> agents(a, Point{0.0});
        agents.insert(agents.end(), b, Point{1.0});
        return Instance::unconstrained(std::move(agents), count_param(params, "k", 11));
    }
    if (name == "hexagon") {
        std::vector<Point> agents{detail::polar(0, 0, 0.5, 120), detail::polar(0, 0, 0.5, 240),
                                  detail::polar(0, 0, 0.5, 360), detail::polar(5, 0, 0.5, 60),
                                  detail::polar(5, 0, 0.5, 300), detail::polar(5, 0, 0.5, 180)};
        const std::size_t k = count_param(params, "k", 3);
        if (param(params, "midpoints", 1.0) == 0.0) {
            return Instance::unconstrained(std::move(agents), k);
        }
        std::vector<Point> candidates = agents;
        for (std::size_t a = 0; a < agents.size(); ++a) {
            for (std::size_t b = a + 1; b < agents.size(); ++b) {
                candidates.push_back(Point{(agents[a][0] + agents[b][0]) / 2.0, (agents[a][1] + agents[b][1]) / 2.0});
            }
        }
        return Instance::discrete(std::move(agents), std::move(candidates), k);
    }
    if (name == "three_circles") {
        const std::size_t  m      = count_param(params, "m", 12);
        std::vector<Point> agents = detail::ring(0.0, 0.5, 0.3, m);
        for (auto& p : detail::ring(0.0, -0.5, 0.3, m)) agents.push_back(std::move(p));
        for (auto& p : detail::ring(6.0, 0.0, 1.0, m)) agents.push_back(std::move(p));
        return Instance::unconstrained(std::move(agents), count_param(params, "k", 3));
    }
    if (name == "prf2_counterexample") {
        return Instance::discrete({Point{0.0}, Point{0.0}, Point{1.0}, Point{1.0}},
                                  {Point{0.0}, Point{0.5}, Point{0.5}, Point{1.0}}, count_param(params, "k", 2));
    }
    if (name == "two_blobs") {
        const std::size_t  m          = count_param(params, "m", 5);
        const double       separation = param(params, "separation", 10.0);
        const double       spread     = param(params, "spread", 0.0);
        std::vector<Point> agents;
        for (const double cx : {0.0, separation}) {
            if (spread > 0.0) {
                for (auto& p : detail::ring(cx, 0.0, spread, m)) agents.push_back(std::move(p));
            } else {
                agents.insert(agents.end(), m, Point{cx, 0.0});
            }
        }
        return Instance::unconstrained(std::move(agents), count_param(params, "k", 2));
    }
    if (name == "grid_uniform") {
        const std::size_t  rows    = count_param(params, "rows", 4);
        const std::size_t  cols    = count_param(params, "cols", 4);
        const double       spacing = param(params, "spacing", 1.0);
        std::vector<Point> agents;
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                agents.push_back(Point{static_cast<double>(c) * spacing, static_cast<double>(r) * spacing});
            }
        }
        return Instance::unconstrained(std::move(agents), count_param(params, "k", 4));
    }
    if (name == "gaussian_mixture") {
        const std::size_t components    = count_param(params, "components", 3);
        const std::size_t per_component = count_param(params, "per_component", 100);
        const double      separation    = param(params, "separation", 8.0);
        const double      sigma         = param(params, "sigma", 1.0);
        SeededRng         rng{count_param(params, "seed", 1)};
        std::vector<Point> agents;
        for (std::size_t comp = 0; comp < components; ++comp) {
            const Point centre = detail::polar(0, 0, separation, 360.0 * static_cast<double>(comp) /
                                                                     static_cast<double>(components));
            for (std::size_t j = 0; j < per_component; ++j) {
                const double dx = sigma * rng.normal();
                const double dy = sigma * rng.normal();
                agents.push_back(Point{centre[0] + dx, centre[1] + dy});
            }
        }
        return Instance::unconstrained(std::move(agents), count_param(params, "k", components));
    }
    throw InputError("unknown generator '" + name + "'");
}

/// Parses "a=100,b=10" into generator parameters.
inline GeneratorParams parse_params(const std::string& text) {
    GeneratorParams params;
    std::size_t     start = 0;
    while (start < text.size()) {
        const auto end   = std::min(text.find(',', start), text.size());
        const auto entry = text.substr(start, end - start);
        const auto eq    = entry.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InputError("generator parameter '" + entry + "' is not key=value");
        }
        try {
            std::size_t used  = 0;
            const auto  value = entry.substr(eq + 1);
            params[entry.substr(0, eq)] = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::logic_error&) {
            throw InputError("generator parameter '" + entry + "' has a non-numeric value");
        }
        start = end + 1;
    }
    return params;
}

}  // namespace prfair::io
