#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pacer/domain.hpp"
#include "pacer/rng.hpp"

namespace pacer {

// Count hierarchy for one dimension (user, publisher or advertiser).
// Counts attach to leaves; aggregate_raw_rates() rolls them up so every
// internal node holds the sum of its children, then smooth_rates() runs a
// top-down pass shrinking each node toward its parent.
class HierarchyTree {
public:
    struct NodeView {
        std::int64_t impressions = 0;
        std::int64_t actions = 0;
        double raw_rate = 0.0;
        double smoothed_rate = 0.0;
    };

    HierarchyTree();

    void add_counts(std::span<const std::uint32_t> path, std::int64_t impressions,
                    std::int64_t actions);
    void aggregate_raw_rates();
    void smooth_rates(std::int64_t prior_strength);

    // Smoothed rate at the deepest node on `path` that has at least one
    // impression; the root rate when no such node exists.
    double rate_for(std::span<const std::uint32_t> path) const;

    std::size_t node_count() const { return nodes_.size(); }
    NodeView root() const;
    std::optional<NodeView> node(std::span<const std::uint32_t> path) const;

    // Line-oriented leaf dump: "id/id/... impressions actions". Loading the
    // dump and re-aggregating reproduces the tree.
    void dump(std::ostream& out) const;
    static HierarchyTree load(std::istream& in);

private:
    struct Node {
        std::uint32_t id = 0;
        int parent = -1;
        std::int64_t impressions = 0;
        std::int64_t actions = 0;
        double raw = 0.0;
        double smoothed = 0.0;
        std::vector<std::pair<std::uint32_t, int>> children;  // sorted by id
    };

    int find_child(int node, std::uint32_t id) const;
    int find_or_add_child(int node, std::uint32_t id);

    std::vector<Node> nodes_;  // nodes_[0] is the root
};

// Average the three smoothed rates in log-odds space and map back through
// the logistic function. Inputs and output clamp to [1e-6, 1 - 1e-6].
double combine_log_odds(double user_rate, double publisher_rate, double advertiser_rate);

double predict_rate(const HierarchyTree& user, const HierarchyTree& publisher,
                    const HierarchyTree& advertiser, const AdRequest& request);

// Simulator-only estimator with controlled accuracy: bias * v * exp(sigma*z)
// around the hidden true rate, clamped to [1e-6, 1].
double noisy_oracle_predict(double hidden_rate, double sigma, double bias, SplitMix64& stream);

}  // namespace pacer
