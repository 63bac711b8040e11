#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prfair {

/// Raised for malformed user input: bad dimensions, out-of-range indices, unparsable files.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class Metric { euclidean, manhattan, precomputed };

inline std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::euclidean:
            return "euclidean";
        case Metric::manhattan:
            return "manhattan";
        case Metric::precomputed:
            return "precomputed";
    }
    return "unknown";
}

inline Metric metric_from_string(std::string_view name) {
    if (name == "euclidean") return Metric::euclidean;
    if (name == "manhattan") return Metric::manhattan;
    if (name == "precomputed") return Metric::precomputed;
    throw InputError("unknown metric '" + std::string{name} + "'");
}

/// A location in R^m. Coordinates must be finite.
class Point {
  public:
    Point() = default;

    explicit Point(std::vector<double> coords) : coords_{std::move(coords)} {
        for (const double value : coords_) {
            if (!std::isfinite(value)) {
                throw InputError("point coordinates must be finite");
            }
        }
    }

    Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

    [[nodiscard]] std::size_t dimension() const noexcept { return coords_.size(); }
    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] double operator[](std::size_t axis) const { return coords_[axis]; }

    friend bool operator==(const Point&, const Point&) = default;

  private:
    std::vector<double> coords_;
};

inline double distance(const Point& p, const Point& q, Metric metric = Metric::euclidean) {
    if (p.dimension() != q.dimension()) {
        throw InputError("distance between points of dimension " + std::to_string(p.dimension()) + " and " +
                         std::to_string(q.dimension()));
    }
    const auto a = p.coords();
    const auto b = q.coords();
    double     acc = 0.0;
    switch (metric) {
        case Metric::euclidean:
            for (std::size_t axis = 0; axis < a.size(); ++axis) {
                const double diff = a[axis] - b[axis];
                acc += diff * diff;
            }
            return std::sqrt(acc);
        case Metric::manhattan:
            for (std::size_t axis = 0; axis < a.size(); ++axis) {
                acc += std::abs(a[axis] - b[axis]);
            }
            return acc;
        case Metric::precomputed:
            break;
    }
    throw InputError("precomputed metric has no coordinate distance");
}

/// Dense row-major matrix of nonnegative finite distances.
class DistanceMatrix {
  public:
    DistanceMatrix() = default;

    DistanceMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_{rows}, cols_{cols}, values_{std::move(values)} {
        if (values_.size() != rows_ * cols_) {
            throw InputError("distance matrix has " + std::to_string(values_.size()) + " entries, expected " +
                             std::to_string(rows_ * cols_));
        }
        for (const double value : values_) {
            if (!std::isfinite(value) || value < 0.0) {
                throw InputError("distance matrix entries must be finite and nonnegative");
            }
        }
    }

    static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        const std::size_t   cols = rows.empty() ? 0 : rows.front().size();
        std::vector<double> flat;
        flat.reserve(rows.size() * cols);
        for (const auto& row : rows) {
            if (row.size() != cols) {
                throw InputError("ragged distance matrix");
            }
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return DistanceMatrix{rows.size(), cols, std::move(flat)};
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }
    [[nodiscard]] std::span<const double> row(std::size_t r) const noexcept {
        return std::span<const double>{values_}.subspan(r * cols_, cols_);
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

  private:
    std::size_t         rows_{0};
    std::size_t         cols_{0};
    std::vector<double> values_;
};

/// A clustering instance: agents, candidate centers, target count k and the metric.
///
/// Unconstrained instances use the agents themselves as candidates (same indices).
/// Discrete instances carry an explicit candidate multiset. Agent-to-candidate distances
/// are computed once at construction; instances are immutable afterwards and cheap to copy.
class Instance {
  public:
    static Instance unconstrained(std::vector<Point> agents, std::size_t k, Metric metric = Metric::euclidean) {
        Instance inst;
        inst.unconstrained_ = true;
        inst.metric_        = metric;
        inst.k_             = k;
        inst.agents_        = std::make_shared<const std::vector<Point>>(std::move(agents));
        inst.candidates_    = inst.agents_;
        inst.finish_from_points();
        return inst;
    }

    static Instance discrete(std::vector<Point> agents,
                             std::vector<Point> candidates,
                             std::size_t        k,
                             Metric             metric = Metric::euclidean) {
        Instance inst;
        inst.metric_     = metric;
        inst.k_          = k;
        inst.agents_     = std::make_shared<const std::vector<Point>>(std::move(agents));
        inst.candidates_ = std::make_shared<const std::vector<Point>>(std::move(candidates));
        inst.finish_from_points();
        return inst;
    }

    /// Unconstrained instance given only the n x n agent distance matrix.
    static Instance unconstrained_from_matrix(DistanceMatrix agent_agent, std::size_t k) {
        if (agent_agent.rows() != agent_agent.cols()) {
            throw InputError("unconstrained distance matrix must be square");
        }
        Instance inst;
        inst.unconstrained_  = true;
        inst.metric_         = Metric::precomputed;
        inst.k_              = k;
        inst.agent_candidate_ = std::make_shared<const DistanceMatrix>(std::move(agent_agent));
        inst.agent_agent_    = inst.agent_candidate_;
        inst.validate_sizes();
        return inst;
    }

    /// Discrete instance given an explicit n x |M| matrix, optionally with the n x n agent matrix
    /// (needed only by checks that look at agent-to-agent distances).
    static Instance discrete_from_matrix(DistanceMatrix                agent_candidate,
                                         std::size_t                   k,
                                         std::optional<DistanceMatrix> agent_agent = std::nullopt) {
        Instance inst;
        inst.metric_          = Metric::precomputed;
        inst.k_               = k;
        inst.agent_candidate_ = std::make_shared<const DistanceMatrix>(std::move(agent_candidate));
        if (agent_agent) {
            if (agent_agent->rows() != inst.agent_candidate_->rows() || agent_agent->cols() != agent_agent->rows()) {
                throw InputError("agent distance matrix must be n x n");
            }
            inst.agent_agent_ = std::make_shared<const DistanceMatrix>(std::move(*agent_agent));
        }
        inst.validate_sizes();
        return inst;
    }

    [[nodiscard]] std::size_t n() const noexcept { return agent_candidate_->rows(); }
    [[nodiscard]] std::size_t num_candidates() const noexcept { return agent_candidate_->cols(); }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] Metric metric() const noexcept { return metric_; }
    [[nodiscard]] bool is_unconstrained() const noexcept { return unconstrained_; }
    [[nodiscard]] bool has_coordinates() const noexcept { return agents_ != nullptr; }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return has_coordinates() ? agents_->front().dimension() : 0;
    }

    [[nodiscard]] const std::vector<Point>& agents() const {
        require_coordinates();
        return *agents_;
    }
    [[nodiscard]] const std::vector<Point>& candidates() const {
        require_coordinates();
        return *candidates_;
    }

    [[nodiscard]] const DistanceMatrix& distances() const noexcept { return *agent_candidate_; }

    /// d(agent, candidate)
    [[nodiscard]] double distance(std::size_t agent, std::size_t candidate) const noexcept {
        return (*agent_candidate_)(agent, candidate);
    }

    [[nodiscard]] bool has_agent_distances() const noexcept { return agent_agent_ != nullptr || has_coordinates(); }

    /// d(agent, agent')
    [[nodiscard]] double agent_distance(std::size_t a, std::size_t b) const {
        if (agent_agent_) {
            return (*agent_agent_)(a, b);
        }
        require_coordinates();
        return prfair::distance((*agents_)[a], (*agents_)[b], metric_);
    }

    /// True when two agents sit at the same location: equal coordinates, or for matrix
    /// instances identical distance rows.
    [[nodiscard]] bool same_location(std::size_t a, std::size_t b) const {
        if (has_coordinates()) {
            return (*agents_)[a] == (*agents_)[b];
        }
        const auto ra = agent_candidate_->row(a);
        const auto rb = agent_candidate_->row(b);
        return std::equal(ra.begin(), ra.end(), rb.begin()) && (!agent_agent_ || (*agent_agent_)(a, b) == 0.0);
    }

    [[nodiscard]] Instance with_k(std::size_t k) const {
        Instance copy = *this;
        copy.k_       = k;
        copy.validate_sizes();
        return copy;
    }

    /// Same instance with every coordinate (or every matrix entry) multiplied by alpha > 0.
    [[nodiscard]] Instance scaled(double alpha) const {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw InputError("scale factor must be positive and finite");
        }
        if (has_coordinates()) {
            auto scale_all = [alpha](const std::vector<Point>& pts) {
                std::vector<Point> out;
                out.reserve(pts.size());
                for (const auto& p : pts) {
                    std::vector<double> c(p.coords().begin(), p.coords().end());
                    for (auto& v : c) v *= alpha;
                    out.emplace_back(std::move(c));
                }
                return out;
            };
            return unconstrained_ ? unconstrained(scale_all(*agents_), k_, metric_)
                                  : discrete(scale_all(*agents_), scale_all(*candidates_), k_, metric_);
        }
        auto scale_matrix = [alpha](const DistanceMatrix& m) {
            std::vector<double> v(m.values().begin(), m.values().end());
            for (auto& x : v) x *= alpha;
            return DistanceMatrix{m.rows(), m.cols(), std::move(v)};
        };
        if (unconstrained_) {
            return unconstrained_from_matrix(scale_matrix(*agent_candidate_), k_);
        }
        std::optional<DistanceMatrix> aa;
        if (agent_agent_) aa = scale_matrix(*agent_agent_);
        return discrete_from_matrix(scale_matrix(*agent_candidate_), k_, std::move(aa));
    }

  private:
    Instance() = default;

    void require_coordinates() const {
        if (!has_coordinates()) {
            throw InputError("instance was built from a distance matrix and has no coordinates");
        }
    }

    void finish_from_points() {
        if (metric_ == Metric::precomputed) {
            throw InputError("point instances need a coordinate metric");
        }
        if (agents_->empty()) {
            throw InputError("instance needs at least one agent");
        }
        if (candidates_->empty()) {
            throw InputError("instance needs at least one candidate");
        }
        const std::size_t dim = agents_->front().dimension();
        if (dim == 0) {
            throw InputError("points must have at least one coordinate");
        }
        auto check_dim = [dim](const std::vector<Point>& pts) {
            for (const auto& p : pts) {
                if (p.dimension() != dim) {
                    throw InputError("all points must share dimension " + std::to_string(dim));
                }
            }
        };
        check_dim(*agents_);
        check_dim(*candidates_);

        const std::size_t   n = agents_->size();
        const std::size_t   m = candidates_->size();
        std::vector<double> values(n * m);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < m; ++c) {
                values[i * m + c] = prfair::distance((*agents_)[i], (*candidates_)[c], metric_);
            }
        }
        agent_candidate_ = std::make_shared<const DistanceMatrix>(n, m, std::move(values));
        validate_sizes();
    }

    void validate_sizes() const {
        if (agent_candidate_->rows() == 0) {
            throw InputError("instance needs at least one agent");
        }
        if (agent_candidate_->cols() == 0) {
            throw InputError("instance needs at least one candidate");
        }
        if (k_ == 0 || k_ > n()) {
            throw InputError("k must satisfy 1 <= k <= n (k=" + std::to_string(k_) + ", n=" + std::to_string(n()) +
                             ")");
        }
    }

    bool                                      unconstrained_{false};
    Metric                                    metric_{Metric::euclidean};
    std::size_t                               k_{1};
    std::shared_ptr<const std::vector<Point>> agents_;
    std::shared_ptr<const std::vector<Point>> candidates_;
    std::shared_ptr<const DistanceMatrix>     agent_candidate_;
    std::shared_ptr<const DistanceMatrix>     agent_agent_;
};

/// Selected candidate indices in selection order. Indices are distinct; coincident
/// locations show up as distinct indices.
class Outcome {
  public:
    Outcome() = default;
    explicit Outcome(std::vector<std::size_t> selected) : selected_{std::move(selected)} {}

    [[nodiscard]] std::size_t size() const noexcept { return selected_.size(); }
    [[nodiscard]] bool empty() const noexcept { return selected_.empty(); }
    [[nodiscard]] std::size_t operator[](std::size_t pos) const { return selected_[pos]; }
    [[nodiscard]] auto begin() const noexcept { return selected_.begin(); }
    [[nodiscard]] auto end() const noexcept { return selected_.end(); }
    [[nodiscard]] const std::vector<std::size_t>& indices() const noexcept { return selected_; }

    void push_back(std::size_t candidate) { selected_.push_back(candidate); }

    [[nodiscard]] bool contains(std::size_t candidate) const noexcept {
        return std::find(selected_.begin(), selected_.end(), candidate) != selected_.end();
    }

    friend bool operator==(const Outcome&, const Outcome&) = default;

  private:
    std::vector<std::size_t> selected_;
};

/// Throws InputError unless the outcome is nonempty and holds distinct valid candidate indices.
inline void validate_outcome(const Instance& inst, const Outcome& outcome) {
    if (outcome.empty()) {
        throw InputError("outcome is empty");
    }
    std::vector<bool> seen(inst.num_candidates(), false);
    for (const std::size_t c : outcome) {
        if (c >= inst.num_candidates()) {
            throw InputError("candidate index " + std::to_string(c) + " out of range");
        }
        if (seen[c]) {
            throw InputError("candidate index " + std::to_string(c) + " selected twice");
        }
        seen[c] = true;
    }
}

/// d(i, X)
inline double distance_to_outcome(const Instance& inst, std::size_t agent, const Outcome& outcome) {
    double best = std::numeric_limits<double>::infinity();
    for (const std::size_t c : outcome) {
        best = std::min(best, inst.distance(agent, c));
    }
    return best;
}

/// Sorted, exactly deduplicated agent-to-candidate distances.
struct RadiusSchedule {
    std::vector<double> radii;

    [[nodiscard]] std::size_t size() const noexcept { return radii.size(); }
    [[nodiscard]] double operator[](std::size_t j) const { return radii[j]; }
    [[nodiscard]] bool contains(double value) const {
        return std::binary_search(radii.begin(), radii.end(), value);
    }
};

inline RadiusSchedule build_radius_schedule(const Instance& inst) {
    const auto          values = inst.distances().values();
    std::vector<double> radii(values.begin(), values.end());
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return RadiusSchedule{std::move(radii)};
}

struct Neighbor {
    std::size_t candidate;
    double      distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// The j selected centers closest to an agent, ascending by (distance, candidate index).
inline std::vector<Neighbor> nearest_j(const Instance& inst, std::size_t agent, const Outcome& outcome, std::size_t j) {
    if (j == 0 || j > outcome.size()) {
        throw InputError("nearest_j needs 1 <= j <= |X| (j=" + std::to_string(j) +
                         ", |X|=" + std::to_string(outcome.size()) + ")");
    }
    std::vector<Neighbor> all;
    all.reserve(outcome.size());
    for (const std::size_t c : outcome) {
        all.push_back({c, inst.distance(agent, c)});
    }
    auto by_distance = [](const Neighbor& a, const Neighbor& b) {
        return a.distance < b.distance || (a.distance == b.distance && a.candidate < b.candidate);
    };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(j), all.end(), by_distance);
    all.resize(j);
    return all;
}

/// ceil(a / b) for positive b.
constexpr std::size_t ceil_div(std::size_t a, std::size_t b) noexcept { return (a + b - 1) / b; }

}  // namespace prfair
