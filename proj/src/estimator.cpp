#include "pacer/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pacer {

namespace {
constexpr double kRateFloor = 1e-6;
constexpr double kRateCeil = 1.0 - 1e-6;

double clamp_rate01(double r) { return std::clamp(r, kRateFloor, kRateCeil); }
}  // namespace

HierarchyTree::HierarchyTree() { nodes_.emplace_back(); }

int HierarchyTree::find_child(int node, std::uint32_t id) const {
    const auto& kids = nodes_[node].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), id,
                               [](const auto& kv, std::uint32_t key) { return kv.first < key; });
    if (it != kids.end() && it->first == id) return it->second;
    return -1;
}

int HierarchyTree::find_or_add_child(int node, std::uint32_t id) {
    int found = find_child(node, id);
    if (found >= 0) return found;
    const int idx = static_cast<int>(nodes_.size());
    Node child;
    child.id = id;
    child.parent = node;
    nodes_.push_back(child);
    auto& kids = nodes_[node].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), id,
                               [](const auto& kv, std::uint32_t key) { return kv.first < key; });
    kids.insert(it, {id, idx});
    return idx;
}

void HierarchyTree::add_counts(std::span<const std::uint32_t> path, std::int64_t impressions,
                               std::int64_t actions) {
    if (impressions < 0 || actions < 0)
        throw std::invalid_argument("HierarchyTree: negative counts");
    if (path.empty()) throw std::invalid_argument("HierarchyTree: empty path");
    int node = 0;
    for (auto id : path) node = find_or_add_child(node, id);
    nodes_[node].impressions += impressions;
    nodes_[node].actions += actions;
}

void HierarchyTree::aggregate_raw_rates() {
    // Nodes are created parents-first, so a reverse pass visits every child
    // before its parent. Internal node counts are recomputed from children.
    for (auto& n : nodes_) {
        if (n.impressions < 0 || n.actions < 0)
            throw std::invalid_argument("HierarchyTree: negative counts");
        if (!n.children.empty()) {
            n.impressions = 0;
            n.actions = 0;
        }
    }
    for (auto i = static_cast<int>(nodes_.size()) - 1; i > 0; --i) {
        const auto& n = nodes_[i];
        auto& p = nodes_[n.parent];
        p.impressions += n.impressions;
        p.actions += n.actions;
    }
    for (auto& n : nodes_)
        n.raw = n.impressions > 0
                    ? static_cast<double>(n.actions) / static_cast<double>(n.impressions)
                    : 0.0;
}

void HierarchyTree::smooth_rates(std::int64_t prior_strength) {
    if (prior_strength < 0) throw std::invalid_argument("HierarchyTree: negative prior strength");
    nodes_[0].smoothed = nodes_[0].raw;
    // Top-down: parents-first creation order means a forward pass sees each
    // parent's smoothed rate before its children need it.
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        auto& n = nodes_[i];
        const double parent_rate = nodes_[n.parent].smoothed;
        const auto k = static_cast<double>(prior_strength);
        const auto denom = static_cast<double>(n.impressions) + k;
        n.smoothed = denom > 0.0
                         ? (static_cast<double>(n.actions) + k * parent_rate) / denom
                         : n.raw;
    }
}

double HierarchyTree::rate_for(std::span<const std::uint32_t> path) const {
    int node = 0;
    int best = 0;
    for (auto id : path) {
        const int child = find_child(node, id);
        if (child < 0) break;
        node = child;
        if (nodes_[node].impressions >= 1) best = node;
    }
    return nodes_[best].smoothed;
}

HierarchyTree::NodeView HierarchyTree::root() const {
    const auto& n = nodes_[0];
    return {n.impressions, n.actions, n.raw, n.smoothed};
}

std::optional<HierarchyTree::NodeView> HierarchyTree::node(
    std::span<const std::uint32_t> path) const {
    int idx = 0;
    for (auto id : path) {
        idx = find_child(idx, id);
        if (idx < 0) return std::nullopt;
    }
    const auto& n = nodes_[idx];
    return NodeView{n.impressions, n.actions, n.raw, n.smoothed};
}

void HierarchyTree::dump(std::ostream& out) const {
    // Depth-first over the sorted child lists; leaves only.
    std::vector<std::uint32_t> path;
    auto walk = [&](auto&& self, int node) -> void {
        const auto& n = nodes_[node];
        if (n.children.empty() && node != 0) {
            for (std::size_t i = 0; i < path.size(); ++i) {
                if (i) out << '/';
                out << path[i];
            }
            out << ' ' << n.impressions << ' ' << n.actions << '\n';
            return;
        }
        for (const auto& [id, idx] : n.children) {
            path.push_back(id);
            self(self, idx);
            path.pop_back();
        }
    };
    walk(walk, 0);
}

HierarchyTree HierarchyTree::load(std::istream& in) {
    HierarchyTree tree;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string path_str;
        std::int64_t imps = 0;
        std::int64_t actions = 0;
        if (!(ls >> path_str >> imps >> actions))
            throw std::invalid_argument("HierarchyTree: bad line: " + line);
        std::vector<std::uint32_t> path;
        std::size_t pos = 0;
        while (pos <= path_str.size()) {
            const auto slash = path_str.find('/', pos);
            const auto part = path_str.substr(pos, slash == std::string::npos ? std::string::npos
                                                                              : slash - pos);
            if (part.empty()) throw std::invalid_argument("HierarchyTree: bad path: " + path_str);
            path.push_back(static_cast<std::uint32_t>(std::stoul(part)));
            if (slash == std::string::npos) break;
            pos = slash + 1;
        }
        tree.add_counts(path, imps, actions);
    }
    return tree;
}

double combine_log_odds(double user_rate, double publisher_rate, double advertiser_rate) {
    auto logit = [](double r) {
        r = clamp_rate01(r);
        return std::log(r / (1.0 - r));
    };
    const double mean = (logit(user_rate) + logit(publisher_rate) + logit(advertiser_rate)) / 3.0;
    const double p = 1.0 / (1.0 + std::exp(-mean));
    return clamp_rate01(p);
}

double predict_rate(const HierarchyTree& user, const HierarchyTree& publisher,
                    const HierarchyTree& advertiser, const AdRequest& request) {
    return combine_log_odds(user.rate_for({request.audience.begin(), request.audience.size()}),
                            publisher.rate_for({request.publisher.begin(), request.publisher.size()}),
                            advertiser.rate_for({request.advertiser.begin(), request.advertiser.size()}));
}

double noisy_oracle_predict(double hidden_rate, double sigma, double bias, SplitMix64& stream) {
    if (sigma < 0.0) throw std::invalid_argument("noisy_oracle_predict: sigma must be >= 0");
    double p = bias * hidden_rate;
    if (sigma > 0.0) {
        std::normal_distribution<double> normal(0.0, 1.0);
        p *= std::exp(sigma * normal(stream));
    }
    return std::clamp(p, 1e-6, 1.0);
}

}  // namespace pacer
