#include "xshap/model.hpp"

#include "xshap/errors.hpp"

#include <algorithm>

namespace xshap {

namespace {

void require_numeric_values(const std::vector<Value>& values, const std::string& what) {
    for (const auto& v : values) {
        if (!v.is_number()) {
            throw argument_error(what + " must be numeric, got token \"" + v.tok() + "\"");
        }
    }
}

void check_output_kind(OutputKind kind, const std::vector<Value>& values, const std::string& what) {
    if (kind == OutputKind::real || kind == OutputKind::ordinal) {
        require_numeric_values(values, what + " with " + output_kind_name(kind) + " outputs");
    }
}

void validate_tabular(const FeatureSpace& space, const TabularModel& tab) {
    std::uint64_t expected = space.total_points();
    if (tab.outputs.size() != expected) {
        throw argument_error("tabular model has " + std::to_string(tab.outputs.size()) +
                             " outputs, expected " + std::to_string(expected));
    }
    check_output_kind(tab.out_kind, tab.outputs, "tabular model");
}

// Checks structure, edge exclusivity/exhaustiveness, single-parent shape and
// the internal consistency of every root-to-leaf path.
void validate_tree(const FeatureSpace& space, const TreeModel& tree) {
    const int m = space.size();
    const int n = static_cast<int>(tree.nodes.size());
    if (n == 0) throw model_integrity_error("tree has no nodes");

    std::vector<int> parents(n, 0);
    for (int id = 0; id < n; ++id) {
        const TreeNode& node = tree.nodes[id];
        if (node.is_leaf()) {
            if (!node.output) throw model_integrity_error("leaf node " + std::to_string(id) + " has no output");
            if (!node.edges.empty()) throw model_integrity_error("leaf node " + std::to_string(id) + " has edges");
            continue;
        }
        if (node.feature >= m) {
            throw model_integrity_error("node " + std::to_string(id) + " tests unknown feature " +
                                        std::to_string(node.feature + 1));
        }
        if (node.edges.empty()) {
            throw model_integrity_error("internal node " + std::to_string(id) + " has no edges");
        }
        const int domain_size = static_cast<int>(space.domains[node.feature].size());
        std::vector<char> covered(domain_size, 0);
        for (const TreeEdge& edge : node.edges) {
            if (edge.child < 0 || edge.child >= n) {
                throw model_integrity_error("node " + std::to_string(id) + " edge points to unknown node");
            }
            if (edge.child == 0) throw model_integrity_error("tree root has a parent");
            parents[edge.child]++;
            if (edge.values.empty()) {
                throw model_integrity_error("node " + std::to_string(id) + " has an edge with no values");
            }
            for (int vi : edge.values) {
                if (vi < 0 || vi >= domain_size) {
                    throw model_integrity_error("node " + std::to_string(id) +
                                                " edge lists a value outside the feature domain");
                }
                if (covered[vi]) {
                    throw model_integrity_error("node " + std::to_string(id) +
                                                " has overlapping edge guards");
                }
                covered[vi] = 1;
            }
        }
        if (std::find(covered.begin(), covered.end(), 0) != covered.end()) {
            throw model_integrity_error("node " + std::to_string(id) +
                                        " edges do not cover the feature domain");
        }
    }
    for (int id = 1; id < n; ++id) {
        if (parents[id] != 1) {
            throw model_integrity_error("node " + std::to_string(id) + " has " +
                                        std::to_string(parents[id]) + " parents, expected 1");
        }
    }

    // Depth-first walk with per-feature allowed-value sets; the single-parent
    // check above already rules out cycles among reachable nodes.
    std::vector<Value> leaf_values;
    int visited = 0;
    std::vector<std::vector<char>> allowed(m);
    for (int i = 0; i < m; ++i) allowed[i].assign(space.domains[i].size(), 1);
    auto walk = [&](auto&& self, int id) -> void {
        const TreeNode& node = tree.nodes[id];
        ++visited;
        if (node.is_leaf()) {
            leaf_values.push_back(*node.output);
            return;
        }
        for (const TreeEdge& edge : node.edges) {
            std::vector<char> saved = allowed[node.feature];
            std::vector<char> next(saved.size(), 0);
            bool feasible = false;
            for (int vi : edge.values) {
                if (saved[vi]) {
                    next[vi] = 1;
                    feasible = true;
                }
            }
            if (!feasible) {
                throw model_integrity_error("internally inconsistent path through node " +
                                            std::to_string(id));
            }
            allowed[node.feature] = next;
            self(self, edge.child);
            allowed[node.feature] = saved;
        }
    };
    walk(walk, 0);
    if (visited != n) {
        throw model_integrity_error("tree has nodes unreachable from the root");
    }
    check_output_kind(tree.out_kind, leaf_values, "tree model");
}

void validate_circuit_structure(const FeatureSpace& space, const CircuitModel& circuit) {
    const int m = space.size();
    for (int i = 0; i < m; ++i) {
        const auto& d = space.domains[i];
        bool boolean = d.size() == 2 && d[0] == Value::number(0) && d[1] == Value::number(1);
        if (!boolean) {
            throw structural_error("circuit inputs must be boolean; feature " +
                                   std::to_string(i + 1) + " is not {0,1}");
        }
    }
    const int n = static_cast<int>(circuit.gates.size());
    if (n == 0) throw structural_error("circuit has no gates");
    std::vector<char> referenced(n, 0);
    for (int g = 0; g < n; ++g) {
        const Gate& gate = circuit.gates[g];
        for (int in : gate.inputs) {
            if (in < 0 || in >= g) {
                throw structural_error("gate " + std::to_string(g) +
                                       " input forms a cycle or forward reference");
            }
            referenced[in] = 1;
        }
        switch (gate.op) {
            case GateOp::variable:
                if (gate.var < 0 || gate.var >= m) {
                    throw structural_error("variable gate " + std::to_string(g) +
                                           " reads unknown feature");
                }
                [[fallthrough]];
            case GateOp::constant:
                if (!gate.inputs.empty()) {
                    throw structural_error("gate " + std::to_string(g) + " takes no inputs");
                }
                break;
            case GateOp::g_not:
                if (gate.inputs.size() != 1) {
                    throw structural_error("NOT gate " + std::to_string(g) + " needs exactly one input");
                }
                break;
            case GateOp::g_and:
            case GateOp::g_or:
                if (gate.inputs.size() < 2) {
                    throw structural_error("gate " + std::to_string(g) + " needs at least two inputs");
                }
                break;
        }
    }
    for (int g = 0; g + 1 < n; ++g) {
        if (!referenced[g]) {
            throw structural_error("gate " + std::to_string(g) +
                                   " is a second output gate (unreferenced)");
        }
    }
}

void validate_ranking(const FeatureSpace& space, const RankingModel& ranking) {
    if (ranking.heads.empty()) throw argument_error("ranking model has no heads");
    if (ranking.labels.size() != ranking.heads.size()) {
        throw argument_error("ranking model needs one label per head");
    }
    for (size_t a = 0; a < ranking.labels.size(); ++a) {
        for (size_t b = a + 1; b < ranking.labels.size(); ++b) {
            if (ranking.labels[a] == ranking.labels[b]) {
                throw argument_error("ranking labels must be distinct; \"" +
                                     ranking.labels[a].str() + "\" repeats");
            }
        }
    }
    check_output_kind(ranking.out_kind, ranking.labels, "ranking model labels");
    for (const RankingHead& head : ranking.heads) {
        if (const auto* tab = std::get_if<TabularModel>(&head)) {
            validate_tabular(space, *tab);
            require_numeric_values(tab->outputs, "ranking head scores");
        } else {
            const auto& tree = std::get<TreeModel>(head);
            validate_tree(space, tree);
            for (const TreeNode& node : tree.nodes) {
                if (node.is_leaf() && !node.output->is_number()) {
                    throw argument_error("ranking head scores must be numeric");
                }
            }
        }
    }
}

const Value& eval_tabular(const FeatureSpace& space, const TabularModel& tab, const Point& x) {
    return tab.outputs[point_rank(space, x)];
}

const Value& eval_tree([[maybe_unused]] const FeatureSpace& space, const TreeModel& tree,
                       const Point& x) {
    int id = 0;
    for (int steps = 0; steps <= static_cast<int>(tree.nodes.size()); ++steps) {
        const TreeNode& node = tree.nodes[id];
        if (node.is_leaf()) return *node.output;
        const int vi = x.vi[node.feature];
        const TreeEdge* taken = nullptr;
        for (const TreeEdge& edge : node.edges) {
            if (std::find(edge.values.begin(), edge.values.end(), vi) != edge.values.end()) {
                taken = &edge;
                break;
            }
        }
        if (!taken) throw model_integrity_error("no edge matches the point at node " + std::to_string(id));
        id = taken->child;
    }
    throw model_integrity_error("tree walk did not reach a leaf");
}

bool eval_circuit(const CircuitModel& circuit, const Point& x) {
    std::vector<char> val(circuit.gates.size(), 0);
    for (size_t g = 0; g < circuit.gates.size(); ++g) {
        const Gate& gate = circuit.gates[g];
        switch (gate.op) {
            case GateOp::variable: val[g] = x.vi[gate.var] == 1; break;
            case GateOp::constant: val[g] = gate.value; break;
            case GateOp::g_not: val[g] = !val[gate.inputs[0]]; break;
            case GateOp::g_and: {
                char acc = 1;
                for (int in : gate.inputs) acc = acc && val[in];
                val[g] = acc;
                break;
            }
            case GateOp::g_or: {
                char acc = 0;
                for (int in : gate.inputs) acc = acc || val[in];
                val[g] = acc;
                break;
            }
        }
    }
    return val.back();
}

} // namespace

std::string output_kind_name(OutputKind k) {
    switch (k) {
        case OutputKind::categorical: return "categorical";
        case OutputKind::ordinal: return "ordinal";
        case OutputKind::real: return "real";
    }
    return "?";
}

Model::Model(FeatureSpace space, Variant variant)
    : space_(std::move(space)), variant_(std::move(variant)) {
    space_.validate();
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TabularModel>) {
                validate_tabular(space_, v);
            } else if constexpr (std::is_same_v<T, TreeModel>) {
                validate_tree(space_, v);
            } else if constexpr (std::is_same_v<T, CircuitModel>) {
                validate_circuit_structure(space_, v);
            } else {
                validate_ranking(space_, v);
            }
        },
        variant_);
}

OutputKind Model::output_kind() const {
    return std::visit(
        [](const auto& v) -> OutputKind {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CircuitModel>) {
                return OutputKind::ordinal;
            } else {
                return v.out_kind;
            }
        },
        variant_);
}

std::string Model::kind_name() const {
    switch (variant_.index()) {
        case 0: return "tabular";
        case 1: return "tree";
        case 2: return "circuit";
        default: return "ranking";
    }
}

Rational head_score(const FeatureSpace& space, const RankingHead& head, const Point& x) {
    if (const auto* tab = std::get_if<TabularModel>(&head)) {
        return eval_tabular(space, *tab, x).num();
    }
    return eval_tree(space, std::get<TreeModel>(head), x).num();
}

int ranking_select(const Model& model, const Point& x) {
    check_point(model.space(), x);
    const auto& ranking = std::get<RankingModel>(model.variant());
    int best = 0;
    Rational best_score = head_score(model.space(), ranking.heads[0], x);
    for (int j = 1; j < static_cast<int>(ranking.heads.size()); ++j) {
        Rational s = head_score(model.space(), ranking.heads[j], x);
        if (s > best_score) {
            best = j;
            best_score = std::move(s);
        }
    }
    return best;
}

ModelOutput evaluate(const Model& model, const Point& x) {
    check_point(model.space(), x);
    const OutputKind kind = model.output_kind();
    return std::visit(
        [&](const auto& v) -> ModelOutput {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TabularModel>) {
                return {kind, eval_tabular(model.space(), v, x)};
            } else if constexpr (std::is_same_v<T, TreeModel>) {
                return {kind, eval_tree(model.space(), v, x)};
            } else if constexpr (std::is_same_v<T, CircuitModel>) {
                return {kind, Value::number(eval_circuit(v, x) ? 1 : 0)};
            } else {
                return {kind, v.labels[ranking_select(model, x)]};
            }
        },
        model.variant());
}

CircuitValidation validate_circuit(const FeatureSpace& space, const CircuitModel& circuit) {
    validate_circuit_structure(space, circuit);
    CircuitValidation report;
    const int n = static_cast<int>(circuit.gates.size());

    // Decomposability is structural: compare variable supports pairwise.
    std::vector<FeatureMask> support(n, 0);
    for (int g = 0; g < n; ++g) {
        const Gate& gate = circuit.gates[g];
        if (gate.op == GateOp::variable) {
            support[g] = FeatureMask{1} << gate.var;
        }
        for (int in : gate.inputs) support[g] |= support[in];
        if (gate.op == GateOp::g_and) {
            FeatureMask shared = 0;
            for (size_t a = 0; a < gate.inputs.size(); ++a) {
                for (size_t b = a + 1; b < gate.inputs.size(); ++b) {
                    shared |= support[gate.inputs[a]] & support[gate.inputs[b]];
                }
            }
            if (shared) {
                report.and_violations.push_back({g, mask_to_features(shared)});
            }
        }
    }

    // Determinism needs every full input assignment.
    std::vector<char> flagged(n, 0);
    const std::uint64_t total = space.total_points();
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        Point x = point_from_rank(space, rank);
        std::vector<char> val(n, 0);
        for (int g = 0; g < n; ++g) {
            const Gate& gate = circuit.gates[g];
            switch (gate.op) {
                case GateOp::variable: val[g] = x.vi[gate.var] == 1; break;
                case GateOp::constant: val[g] = gate.value; break;
                case GateOp::g_not: val[g] = !val[gate.inputs[0]]; break;
                case GateOp::g_and: {
                    char acc = 1;
                    for (int in : gate.inputs) acc = acc && val[in];
                    val[g] = acc;
                    break;
                }
                case GateOp::g_or: {
                    int ones = 0;
                    for (int in : gate.inputs) ones += val[in] ? 1 : 0;
                    val[g] = ones > 0;
                    if (ones > 1 && !flagged[g]) {
                        flagged[g] = 1;
                        report.or_violations.push_back({g, x});
                    }
                    break;
                }
            }
        }
    }

    report.deterministic = report.or_violations.empty();
    report.decomposable = report.and_violations.empty();
    return report;
}

CircuitValidation validate_circuit(const Model& model) {
    const CircuitModel* circuit = model.circuit();
    if (!circuit) throw argument_error("validate_circuit needs a circuit model");
    return validate_circuit(model.space(), *circuit);
}

void check_nonconstant(const Model& model) {
    const std::uint64_t total = model.space().total_points();
    ModelOutput first = evaluate(model, point_from_rank(model.space(), 0));
    for (std::uint64_t rank = 1; rank < total; ++rank) {
        if (!(evaluate(model, point_from_rank(model.space(), rank)) == first)) return;
    }
    throw model_integrity_error("model is constant over the whole feature space");
}

ExplanationProblem::ExplanationProblem(Model model, Point v, Rational delta)
    : model_(std::move(model)), v_(std::move(v)), q_(evaluate(model_, v_)), delta_(std::move(delta)) {
    if (delta_ < 0) throw argument_error("delta must be non-negative");
    if (model_.is_ranking()) {
        mode_ = SimilarityMode::argmax_equality;
    } else if (model_.output_kind() == OutputKind::real) {
        mode_ = SimilarityMode::threshold;
    } else {
        mode_ = SimilarityMode::class_equality;
    }
    if (mode_ != SimilarityMode::threshold && delta_ != 0) {
        throw argument_error("delta must be 0 for classification and ranking problems");
    }
}

namespace {

struct Fnv {
    std::uint64_t h = 1469598103934665603ull;
    void feed(std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        feed_byte(0xff);
    }
    void feed_byte(unsigned char c) {
        h ^= c;
        h *= 1099511628211ull;
    }
    void feed_int(long long v) { feed(std::to_string(v)); }
};

void hash_value(Fnv& f, const Value& v) {
    f.feed_byte(v.is_token() ? 't' : 'n');
    f.feed(v.str());
}

void hash_tabular(Fnv& f, const TabularModel& tab) {
    f.feed("tab");
    f.feed_int(static_cast<int>(tab.out_kind));
    for (const auto& v : tab.outputs) hash_value(f, v);
}

void hash_tree(Fnv& f, const TreeModel& tree) {
    f.feed("tree");
    f.feed_int(static_cast<int>(tree.out_kind));
    for (const TreeNode& node : tree.nodes) {
        f.feed_int(node.feature);
        for (const TreeEdge& edge : node.edges) {
            for (int vi : edge.values) f.feed_int(vi);
            f.feed_int(edge.child);
        }
        if (node.output) hash_value(f, *node.output);
    }
}

} // namespace

std::uint64_t problem_fingerprint(const ExplanationProblem& problem) {
    Fnv f;
    const Model& model = problem.model();
    f.feed(model.kind_name());
    for (const auto& domain : model.space().domains) {
        for (const Value& v : domain) hash_value(f, v);
        f.feed_byte('|');
    }
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TabularModel>) {
                hash_tabular(f, v);
            } else if constexpr (std::is_same_v<T, TreeModel>) {
                hash_tree(f, v);
            } else if constexpr (std::is_same_v<T, CircuitModel>) {
                f.feed("circuit");
                for (const Gate& g : v.gates) {
                    f.feed_int(static_cast<int>(g.op));
                    f.feed_int(g.var);
                    f.feed_int(g.value ? 1 : 0);
                    for (int in : g.inputs) f.feed_int(in);
                }
            } else {
                f.feed("ranking");
                f.feed_int(static_cast<int>(v.out_kind));
                for (const Value& label : v.labels) hash_value(f, label);
                for (const RankingHead& head : v.heads) {
                    if (const auto* tab = std::get_if<TabularModel>(&head)) {
                        hash_tabular(f, *tab);
                    } else {
                        hash_tree(f, std::get<TreeModel>(head));
                    }
                }
            }
        },
        model.variant());
    for (int vi : problem.instance().vi) f.feed_int(vi);
    f.feed(to_fraction_string(problem.delta()));
    return f.h;
}

} // namespace xshap
