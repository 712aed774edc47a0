#pragma once

#include "xshap/feature_space.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace xshap {

enum class OutputKind { categorical, ordinal, real };

std::string output_kind_name(OutputKind k);

struct ModelOutput {
    OutputKind kind = OutputKind::categorical;
    Value value;

    friend bool operator==(const ModelOutput& a, const ModelOutput& b) {
        return a.kind == b.kind && a.value == b.value;
    }
};

// Explicit mapping from every point of the space (by rank) to an output.
struct TabularModel {
    OutputKind out_kind = OutputKind::real;
    std::vector<Value> outputs;
};

struct TreeEdge {
    std::vector<int> values; // domain-value indices admitted by this edge
    int child = -1;
};

// Internal node: feature >= 0, mutually exclusive and exhaustive edges.
// Leaf: feature < 0 and `output` set.
struct TreeNode {
    int feature = -1;
    std::vector<TreeEdge> edges;
    std::optional<Value> output;

    bool is_leaf() const { return feature < 0; }
};

struct TreeModel {
    OutputKind out_kind = OutputKind::real;
    std::vector<TreeNode> nodes; // node 0 is the root
};

enum class GateOp { variable, constant, g_not, g_and, g_or };

struct Gate {
    GateOp op = GateOp::constant;
    int var = -1;             // variable gates: 0-based feature index
    bool value = false;       // constant gates
    std::vector<int> inputs;  // indices of earlier gates
};

// Boolean circuit over boolean inputs; gates are topologically ordered and
// the last gate is the single output.
struct CircuitModel {
    std::vector<Gate> gates;
    std::optional<bool> deterministic;  // set after validate_circuit
    std::optional<bool> decomposable;
};

using RankingHead = std::variant<TabularModel, TreeModel>;

// Scores every index with a real-valued head and predicts the label of the
// best-scoring index (lowest index wins ties).
struct RankingModel {
    std::vector<RankingHead> heads;
    std::vector<Value> labels;  // injective, one per head
    OutputKind out_kind = OutputKind::categorical;
};

class Model {
public:
    using Variant = std::variant<TabularModel, TreeModel, CircuitModel, RankingModel>;

    // Validates the variant against the space; throws on structural defects.
    Model(FeatureSpace space, Variant variant);

    const FeatureSpace& space() const { return space_; }
    const Variant& variant() const { return variant_; }
    OutputKind output_kind() const;
    std::string kind_name() const;
    bool is_ranking() const { return std::holds_alternative<RankingModel>(variant_); }

    const CircuitModel* circuit() const { return std::get_if<CircuitModel>(&variant_); }
    CircuitModel* circuit() { return std::get_if<CircuitModel>(&variant_); }

private:
    FeatureSpace space_;
    Variant variant_;
};

ModelOutput evaluate(const Model& model, const Point& x);

// Argmax head index (0-based); ties break to the lowest index.
int ranking_select(const Model& model, const Point& x);

// Evaluates one ranking head (also used for tabular/tree submodels).
Rational head_score(const FeatureSpace& space, const RankingHead& head, const Point& x);

struct OrViolation {
    int gate;
    Point witness; // input assignment driving two operands of the OR to 1
};

struct AndViolation {
    int gate;
    std::vector<int> shared_vars; // features appearing under two operands
};

struct CircuitValidation {
    bool deterministic = true;
    bool decomposable = true;
    std::vector<OrViolation> or_violations;
    std::vector<AndViolation> and_violations;

    bool clean() const { return deterministic && decomposable; }
};

// Exhaustive determinism/decomposability check over all input assignments.
CircuitValidation validate_circuit(const Model& model);
CircuitValidation validate_circuit(const FeatureSpace& space, const CircuitModel& circuit);

// Full scan; throws model_integrity_error if the model is constant.
void check_nonconstant(const Model& model);

enum class SimilarityMode { threshold, class_equality, argmax_equality };

// The unit of analysis: a model, a target instance (v, q) with
// q = model(v), and the output-change threshold delta.
class ExplanationProblem {
public:
    ExplanationProblem(Model model, Point v, Rational delta = Rational(0));

    const Model& model() const { return model_; }
    const FeatureSpace& space() const { return model_.space(); }
    const Point& instance() const { return v_; }
    const ModelOutput& target() const { return q_; }
    const Rational& delta() const { return delta_; }
    SimilarityMode mode() const { return mode_; }
    int num_features() const { return space().size(); }

private:
    Model model_;
    Point v_;
    ModelOutput q_;
    Rational delta_;
    SimilarityMode mode_;
};

// Structural hash of model + instance + delta; used to tag score vectors.
std::uint64_t problem_fingerprint(const ExplanationProblem& problem);

} // namespace xshap
