#include "leoiot/mlpredict.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "leoiot/rng.hpp"

namespace leoiot::mlpredict {

double RegressionTree::predict(double x) const {
    if (nodes.empty()) throw std::logic_error("mlpredict: predicting with an empty tree");
    int i = 0;
    while (!nodes[i].leaf()) i = (x <= nodes[i].threshold) ? nodes[i].left : nodes[i].right;
    return nodes[i].value;
}

double ForestModel::predict(double x) const {
    if (trees.empty()) throw std::logic_error("mlpredict: predicting with an empty forest");
    double sum = 0;
    for (const RegressionTree& t : trees) sum += t.predict(x);
    return sum / static_cast<double>(trees.size());
}

LinearModel fit_ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("mlpredict: x/y size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("mlpredict: OLS needs at least two points");
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("mlpredict: x has zero variance");
    LinearModel m;
    m.slope = sxy / sxx;
    m.intercept = my - m.slope * mx;
    return m;
}

namespace {

struct Builder {
    std::span<const double> x;
    std::span<const double> y;
    int max_depth;
    int min_samples_split;
    std::vector<RegressionTree::Node> nodes;

    // idx is sorted by x on entry and stays sorted in both children.
    int build(std::vector<std::size_t>& idx, int depth) {
        const int self = static_cast<int>(nodes.size());
        nodes.emplace_back();

        double sum = 0, sum2 = 0;
        for (std::size_t i : idx) {
            sum += y[i];
            sum2 += y[i] * y[i];
        }
        const double n = static_cast<double>(idx.size());
        const double mean = sum / n;
        const double sse = sum2 - sum * sum / n;
        nodes[self].value = mean;

        if (depth >= max_depth || idx.size() < static_cast<std::size_t>(min_samples_split) ||
            sse <= 1e-12 * std::max(1.0, sum2))
            return self;

        // Best split: minimize left SSE + right SSE, scanning prefix sums;
        // split only between distinct x values (candidate = midpoint).
        double best_cost = std::numeric_limits<double>::infinity();
        std::size_t best_cut = 0;  // left gets idx[0..best_cut)
        double lsum = 0, lsum2 = 0;
        for (std::size_t k = 1; k < idx.size(); ++k) {
            lsum += y[idx[k - 1]];
            lsum2 += y[idx[k - 1]] * y[idx[k - 1]];
            if (x[idx[k - 1]] == x[idx[k]]) continue;
            const double ln = static_cast<double>(k);
            const double rn = n - ln;
            const double rsum = sum - lsum, rsum2 = sum2 - lsum2;
            const double cost = (lsum2 - lsum * lsum / ln) + (rsum2 - rsum * rsum / rn);
            if (cost < best_cost - 1e-12 * std::max(1.0, best_cost)) {
                best_cost = cost;
                best_cut = k;
            }
        }
        if (best_cut == 0) return self;  // all x equal, nothing to split on

        std::vector<std::size_t> left(idx.begin(), idx.begin() + best_cut);
        std::vector<std::size_t> right(idx.begin() + best_cut, idx.end());
        nodes[self].threshold = 0.5 * (x[left.back()] + x[right.front()]);
        const int l = build(left, depth + 1);
        const int r = build(right, depth + 1);
        nodes[self].left = l;
        nodes[self].right = r;
        return self;
    }
};

}  // namespace

RegressionTree fit_tree(std::span<const double> x, std::span<const double> y, int max_depth,
                        int min_samples_split) {
    if (x.size() != y.size()) throw std::invalid_argument("mlpredict: x/y size mismatch");
    if (x.empty()) throw std::invalid_argument("mlpredict: tree needs at least one point");
    if (max_depth < 0 || min_samples_split < 2)
        throw std::invalid_argument("mlpredict: max_depth >= 0 and min_samples_split >= 2 required");

    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    Builder b{x, y, max_depth, min_samples_split, {}};
    b.build(idx, 0);
    RegressionTree t;
    t.nodes = std::move(b.nodes);
    t.max_depth = max_depth;
    t.min_samples_split = min_samples_split;
    return t;
}

ForestModel fit_forest(std::span<const double> x, std::span<const double> y, int n_estimators,
                       int max_depth, int min_samples_split, std::uint64_t seed, bool bootstrap) {
    if (n_estimators < 1) throw std::invalid_argument("mlpredict: n_estimators must be >= 1");
    if (x.size() != y.size()) throw std::invalid_argument("mlpredict: x/y size mismatch");
    if (x.empty()) throw std::invalid_argument("mlpredict: forest needs at least one point");

    ForestModel forest;
    forest.trees.reserve(static_cast<std::size_t>(n_estimators));
    std::vector<double> bx(x.size()), by(y.size());
    for (int t = 0; t < n_estimators; ++t) {
        if (!bootstrap) {
            forest.trees.push_back(fit_tree(x, y, max_depth, min_samples_split));
            continue;
        }
        rng::Stream stream(rng::derive_seed(seed, static_cast<std::uint64_t>(t)));
        for (std::size_t i = 0; i < x.size(); ++i) {
            const std::size_t j = static_cast<std::size_t>(stream.uniform_int(x.size()));
            bx[i] = x[j];
            by[i] = y[j];
        }
        forest.trees.push_back(fit_tree(bx, by, max_depth, min_samples_split));
    }
    return forest;
}

FitReport evaluate(const std::function<double(double)>& predict, std::span<const double> x_val,
                   std::span<const double> y_val) {
    if (x_val.size() != y_val.size() || x_val.empty())
        throw std::invalid_argument("mlpredict: validation set empty or mismatched");
    const std::size_t n = x_val.size();
    const double my = std::accumulate(y_val.begin(), y_val.end(), 0.0) / static_cast<double>(n);
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = predict(x_val[i]) - y_val[i];
        ss_res += e * e;
        ss_tot += (y_val[i] - my) * (y_val[i] - my);
    }
    FitReport r;
    r.rmse = std::sqrt(ss_res / static_cast<double>(n));
    if (ss_tot > 0.0) {
        r.r_squared = 1.0 - ss_res / ss_tot;
    } else {
        r.r_squared = std::numeric_limits<double>::quiet_NaN();
        r.r2_valid = false;
    }
    return r;
}

double Predictor::predict(double x) const {
    return std::visit([x](const auto& m) { return m.predict(x); }, model_);
}

std::string Predictor::kind() const {
    struct Visitor {
        std::string operator()(const LinearModel&) const { return "ols"; }
        std::string operator()(const RegressionTree&) const { return "tree"; }
        std::string operator()(const ForestModel&) const { return "forest"; }
    };
    return std::visit(Visitor{}, model_);
}

namespace {

void write_tree(std::ostream& out, const RegressionTree& t) {
    out << "tree " << t.max_depth << ' ' << t.min_samples_split << ' ' << t.nodes.size() << '\n';
    out.precision(17);
    for (const auto& n : t.nodes) {
        if (n.leaf())
            out << "leaf " << n.value << '\n';
        else
            out << "node " << n.threshold << ' ' << n.left << ' ' << n.right << '\n';
    }
}

RegressionTree read_tree(std::istream& in, const std::string& path) {
    RegressionTree t;
    std::size_t count = 0;
    if (!(in >> t.max_depth >> t.min_samples_split >> count))
        throw std::runtime_error("mlpredict: malformed tree header in '" + path + "'");
    t.nodes.resize(count);
    for (auto& n : t.nodes) {
        std::string tag;
        if (!(in >> tag)) throw std::runtime_error("mlpredict: truncated tree in '" + path + "'");
        if (tag == "leaf") {
            if (!(in >> n.value)) throw std::runtime_error("mlpredict: bad leaf in '" + path + "'");
        } else if (tag == "node") {
            if (!(in >> n.threshold >> n.left >> n.right) || n.left < 0 || n.right < 0 ||
                static_cast<std::size_t>(n.left) >= count || static_cast<std::size_t>(n.right) >= count)
                throw std::runtime_error("mlpredict: bad node in '" + path + "'");
        } else {
            throw std::runtime_error("mlpredict: unknown tag '" + tag + "' in '" + path + "'");
        }
    }
    return t;
}

}  // namespace

void Predictor::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("mlpredict: cannot write '" + path + "'");
    out.precision(17);
    if (const auto* lm = std::get_if<LinearModel>(&model_)) {
        out << "linear " << lm->slope << ' ' << lm->intercept << '\n';
    } else if (const auto* t = std::get_if<RegressionTree>(&model_)) {
        write_tree(out, *t);
    } else {
        const auto& f = std::get<ForestModel>(model_);
        out << "forest " << f.trees.size() << '\n';
        for (const auto& t : f.trees) write_tree(out, t);
    }
}

Predictor Predictor::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("mlpredict: cannot open '" + path + "'");
    std::string tag;
    if (!(in >> tag)) throw std::runtime_error("mlpredict: '" + path + "' is empty");
    if (tag == "linear") {
        LinearModel m;
        if (!(in >> m.slope >> m.intercept))
            throw std::runtime_error("mlpredict: malformed linear model in '" + path + "'");
        return Predictor(m);
    }
    if (tag == "tree") return Predictor(read_tree(in, path));
    if (tag == "forest") {
        std::size_t count = 0;
        if (!(in >> count)) throw std::runtime_error("mlpredict: malformed forest in '" + path + "'");
        ForestModel f;
        f.trees.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            std::string t;
            if (!(in >> t) || t != "tree")
                throw std::runtime_error("mlpredict: malformed forest tree in '" + path + "'");
            f.trees.push_back(read_tree(in, path));
        }
        return Predictor(std::move(f));
    }
    throw std::runtime_error("mlpredict: unknown model kind '" + tag + "' in '" + path + "'");
}

}  // namespace leoiot::mlpredict
