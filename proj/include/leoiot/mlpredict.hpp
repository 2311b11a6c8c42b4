#ifndef LEOIOT_MLPREDICT_HPP
#define LEOIOT_MLPREDICT_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace leoiot::mlpredict {

struct LinearModel {
    double slope = 0;
    double intercept = 0;
    double predict(double x) const { return slope * x + intercept; }
};

/// Binary regression tree on a single feature, stored as a flat node array
/// (root at index 0). Leaves predict the mean of their training targets.
struct RegressionTree {
    struct Node {
        double threshold = 0;  // go left when x <= threshold
        double value = 0;      // leaf prediction
        int left = -1;
        int right = -1;
        bool leaf() const { return left < 0; }
    };
    std::vector<Node> nodes;
    int max_depth = 10;
    int min_samples_split = 5;

    double predict(double x) const;
};

struct ForestModel {
    std::vector<RegressionTree> trees;
    double predict(double x) const;
};

struct FitReport {
    double rmse = 0;
    double r_squared = 0;
    bool r2_valid = true;  // false when the validation target has zero variance
};

/// Closed-form least squares. Throws on fewer than two points or zero
/// variance in x.
LinearModel fit_ols(std::span<const double> x, std::span<const double> y);

/// Greedy variance-reduction splits; candidates are midpoints between
/// consecutive sorted unique x values, ties resolved toward the lowest
/// threshold. A node stops splitting at the depth limit, below
/// min_samples_split, or at zero target variance.
RegressionTree fit_tree(std::span<const double> x, std::span<const double> y, int max_depth,
                        int min_samples_split);

/// Trees on bootstrap resamples with per-tree derived seeds; prediction is
/// the tree mean. bootstrap=false fits every tree on the full sample.
ForestModel fit_forest(std::span<const double> x, std::span<const double> y, int n_estimators,
                       int max_depth, int min_samples_split, std::uint64_t seed,
                       bool bootstrap = true);

FitReport evaluate(const std::function<double(double)>& predict, std::span<const double> x_val,
                   std::span<const double> y_val);

/// Any of the three regressors behind one predict/save/load surface.
class Predictor {
public:
    Predictor() = default;
    explicit Predictor(LinearModel m) : model_(m) {}
    explicit Predictor(RegressionTree m) : model_(std::move(m)) {}
    explicit Predictor(ForestModel m) : model_(std::move(m)) {}

    double predict(double x) const;
    std::string kind() const;  // "ols" | "tree" | "forest"

    void save(const std::string& path) const;
    static Predictor load(const std::string& path);

    std::function<double(double)> fn() const {
        return [copy = *this](double x) { return copy.predict(x); };
    }

private:
    std::variant<LinearModel, RegressionTree, ForestModel> model_;
};

}  // namespace leoiot::mlpredict

#endif
