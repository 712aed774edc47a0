#include "xshap/modelgen.hpp"

#include "xshap/errors.hpp"

#include <algorithm>

namespace xshap {

namespace {

const char* kTokens[] = {"red", "green", "blue", "amber"};

Rational regression_pool(Rng& rng) {
    static const int num[] = {-2, -1, -1, 0, 0, 1, 1, 2, 3, 7, -3, 5};
    static const int den[] = {1, 1, 2, 1, 1, 1, 2, 1, 2, 4, 4, 4};
    int k = pick_int(rng, 0, 11);
    return Rational(num[k], den[k]);
}

Rational delta_pool(Rng& rng) {
    static const int num[] = {0, 1, 1, 1};
    static const int den[] = {1, 4, 2, 1};
    int k = pick_int(rng, 0, 3);
    return Rational(num[k], den[k]);
}

bool has_two_distinct(const std::vector<Value>& values) {
    for (size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] == values[0])) return true;
    }
    return false;
}

enum class OutputStyle { ordinal_classes, token_classes, regression };

OutputStyle pick_style(Rng& rng, const GenOptions& options) {
    std::vector<OutputStyle> styles{OutputStyle::ordinal_classes};
    if (options.allow_categorical) styles.push_back(OutputStyle::token_classes);
    if (options.allow_regression) styles.push_back(OutputStyle::regression);
    return styles[pick_int(rng, 0, static_cast<int>(styles.size()) - 1)];
}

std::vector<Value> random_outputs(Rng& rng, std::uint64_t count, OutputStyle style) {
    std::vector<Value> out;
    out.reserve(count);
    while (true) {
        out.clear();
        for (std::uint64_t i = 0; i < count; ++i) {
            switch (style) {
                case OutputStyle::ordinal_classes:
                    out.push_back(Value::number(pick_int(rng, 0, 2)));
                    break;
                case OutputStyle::token_classes:
                    out.push_back(Value::token(kTokens[pick_int(rng, 0, 2)]));
                    break;
                case OutputStyle::regression:
                    out.push_back(Value::number(regression_pool(rng)));
                    break;
            }
        }
        if (has_two_distinct(out)) return out;
    }
}

OutputKind style_kind(OutputStyle style) {
    switch (style) {
        case OutputStyle::ordinal_classes: return OutputKind::ordinal;
        case OutputStyle::token_classes: return OutputKind::categorical;
        case OutputStyle::regression: return OutputKind::real;
    }
    return OutputKind::categorical;
}

Point random_point(Rng& rng, const FeatureSpace& space) {
    Point p;
    for (int i = 0; i < space.size(); ++i) {
        p.vi.push_back(pick_int(rng, 0, static_cast<int>(space.domains[i].size()) - 1));
    }
    return p;
}

ExplanationProblem problem_on(Rng& rng, Model model) {
    Point v = random_point(rng, model.space());
    Rational delta = 0;
    if (!model.is_ranking() && model.output_kind() == OutputKind::real) {
        delta = delta_pool(rng);
    }
    return ExplanationProblem(std::move(model), std::move(v), std::move(delta));
}

} // namespace

int pick_int(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

FeatureSpace random_space(Rng& rng, const GenOptions& options) {
    FeatureSpace space;
    int m = pick_int(rng, options.min_features, options.max_features);
    for (int i = 0; i < m; ++i) {
        int size = pick_int(rng, options.min_domain, options.max_domain);
        std::vector<Value> domain;
        for (int k = 0; k < size; ++k) domain.push_back(Value::number(k));
        space.domains.push_back(std::move(domain));
    }
    return space;
}

Model random_tabular_model(Rng& rng, const GenOptions& options) {
    FeatureSpace space = random_space(rng, options);
    OutputStyle style = pick_style(rng, options);
    TabularModel tab;
    tab.out_kind = style_kind(style);
    tab.outputs = random_outputs(rng, space.total_points(), style);
    return Model(std::move(space), std::move(tab));
}

Model random_boolean_tabular(Rng& rng, const GenOptions& options) {
    FeatureSpace space = random_space(rng, options);
    TabularModel tab;
    tab.out_kind = OutputKind::ordinal;
    while (true) {
        tab.outputs.clear();
        for (std::uint64_t i = 0; i < space.total_points(); ++i) {
            tab.outputs.push_back(Value::number(pick_int(rng, 0, 1)));
        }
        if (has_two_distinct(tab.outputs)) break;
    }
    return Model(std::move(space), std::move(tab));
}

Model random_tree_model(Rng& rng, const GenOptions& options) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        FeatureSpace space = random_space(rng, options);
        OutputStyle style = pick_style(rng, options);
        const int m = space.size();

        TreeModel tree;
        tree.out_kind = style_kind(style);
        auto make_leaf = [&](Rng& r) {
            TreeNode leaf;
            switch (style) {
                case OutputStyle::ordinal_classes:
                    leaf.output = Value::number(pick_int(r, 0, 2));
                    break;
                case OutputStyle::token_classes:
                    leaf.output = Value::token(kTokens[pick_int(r, 0, 2)]);
                    break;
                case OutputStyle::regression:
                    leaf.output = Value::number(regression_pool(r));
                    break;
            }
            return leaf;
        };

        // grow in preorder; each path uses a feature at most once
        auto grow = [&](auto&& self, std::vector<int> unused, int depth) -> int {
            int id = static_cast<int>(tree.nodes.size());
            tree.nodes.emplace_back();
            bool leaf = unused.empty() || depth >= 3 || pick_int(rng, 0, 2) == 0;
            if (leaf) {
                tree.nodes[id] = make_leaf(rng);
                return id;
            }
            int pos = pick_int(rng, 0, static_cast<int>(unused.size()) - 1);
            int feature = unused[pos];
            unused.erase(unused.begin() + pos);

            std::vector<int> values(space.domains[feature].size());
            for (size_t k = 0; k < values.size(); ++k) values[k] = static_cast<int>(k);
            for (int i = static_cast<int>(values.size()) - 1; i > 0; --i) {
                std::swap(values[i], values[pick_int(rng, 0, i)]);
            }
            int groups = pick_int(rng, 2, static_cast<int>(values.size()));
            std::vector<TreeEdge> edges(groups);
            for (size_t k = 0; k < values.size(); ++k) {
                edges[k < static_cast<size_t>(groups) ? k : pick_int(rng, 0, groups - 1)]
                    .values.push_back(values[k]);
            }
            for (TreeEdge& edge : edges) {
                std::sort(edge.values.begin(), edge.values.end());
                edge.child = self(self, unused, depth + 1);
            }
            tree.nodes[id].feature = feature;
            tree.nodes[id].edges = std::move(edges);
            return id;
        };
        std::vector<int> unused(m);
        for (int i = 0; i < m; ++i) unused[i] = i;
        grow(grow, unused, 0);

        Model model(std::move(space), std::move(tree));
        try {
            check_nonconstant(model);
            return model;
        } catch (const model_integrity_error&) {
            continue;
        }
    }
    throw internal_error("failed to generate a non-constant tree model");
}

Model random_circuit_model(Rng& rng, int features) {
    for (int attempt = 0; attempt < 128; ++attempt) {
        FeatureSpace space;
        for (int i = 0; i < features; ++i) {
            space.domains.push_back({Value::number(0), Value::number(1)});
        }
        CircuitModel circuit;
        for (int i = 0; i < features; ++i) {
            Gate g;
            g.op = GateOp::variable;
            g.var = i;
            circuit.gates.push_back(g);
        }
        int extra = pick_int(rng, 1, 5);
        for (int k = 0; k < extra; ++k) {
            int n = static_cast<int>(circuit.gates.size());
            Gate g;
            switch (pick_int(rng, 0, 2)) {
                case 0:
                    g.op = GateOp::g_not;
                    g.inputs = {pick_int(rng, 0, n - 1)};
                    break;
                case 1:
                case 2: {
                    g.op = pick_int(rng, 0, 1) ? GateOp::g_and : GateOp::g_or;
                    int a = pick_int(rng, 0, n - 1);
                    int b = pick_int(rng, 0, n - 1);
                    if (a == b) b = (b + 1) % n;
                    g.inputs = {std::min(a, b), std::max(a, b)};
                    break;
                }
            }
            circuit.gates.push_back(std::move(g));
        }
        // fold every dangling gate into one output so the circuit has a
        // single sink
        std::vector<char> referenced(circuit.gates.size(), 0);
        for (const Gate& g : circuit.gates) {
            for (int in : g.inputs) referenced[in] = 1;
        }
        std::vector<int> dangling;
        for (size_t g = 0; g + 1 < circuit.gates.size(); ++g) {
            if (!referenced[g]) dangling.push_back(static_cast<int>(g));
        }
        if (!dangling.empty()) {
            dangling.push_back(static_cast<int>(circuit.gates.size()) - 1);
            Gate out;
            out.op = pick_int(rng, 0, 1) ? GateOp::g_or : GateOp::g_and;
            out.inputs = dangling;
            circuit.gates.push_back(std::move(out));
        }
        Model model(std::move(space), std::move(circuit));
        try {
            check_nonconstant(model);
            return model;
        } catch (const model_integrity_error&) {
            continue;
        }
    }
    throw internal_error("failed to generate a non-constant circuit");
}

Model random_ranking_model(Rng& rng, const GenOptions& options) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        FeatureSpace space = random_space(rng, options);
        RankingModel ranking;
        int heads = pick_int(rng, 2, 3);
        for (int h = 0; h < heads; ++h) {
            TabularModel head;
            head.out_kind = OutputKind::real;
            for (std::uint64_t i = 0; i < space.total_points(); ++i) {
                head.outputs.push_back(Value::number(regression_pool(rng)));
            }
            ranking.heads.emplace_back(std::move(head));
            ranking.labels.push_back(pick_int(rng, 0, 1) ? Value::token(kTokens[h])
                                                         : Value::number(10 + h));
        }
        bool token_labels = std::any_of(ranking.labels.begin(), ranking.labels.end(),
                                        [](const Value& v) { return v.is_token(); });
        ranking.out_kind = token_labels ? OutputKind::categorical : OutputKind::ordinal;
        Model model(std::move(space), std::move(ranking));
        try {
            check_nonconstant(model);
            return model;
        } catch (const model_integrity_error&) {
            continue;
        }
    }
    throw internal_error("failed to generate a non-constant ranking model");
}

Model flatten_to_tabular(const Model& model) {
    TabularModel tab;
    tab.out_kind = model.output_kind();
    const std::uint64_t total = model.space().total_points();
    tab.outputs.reserve(total);
    for (std::uint64_t rank = 0; rank < total; ++rank) {
        tab.outputs.push_back(evaluate(model, point_from_rank(model.space(), rank)).value);
    }
    return Model(model.space(), std::move(tab));
}

ExplanationProblem random_problem(Rng& rng, const GenOptions& options) {
    return problem_on(rng, random_tabular_model(rng, options));
}

ExplanationProblem random_numeric_problem(Rng& rng, const GenOptions& options) {
    GenOptions numeric = options;
    numeric.allow_categorical = false;
    return problem_on(rng, random_tabular_model(rng, numeric));
}

ExplanationProblem random_problem_mixed(Rng& rng, const GenOptions& options) {
    switch (pick_int(rng, 0, 4)) {
        case 0:
        case 1:
            return problem_on(rng, random_tabular_model(rng, options));
        case 2:
            return problem_on(rng, random_tree_model(rng, options));
        case 3:
            return problem_on(rng,
                              random_circuit_model(rng, pick_int(rng, std::max(1, options.min_features),
                                                                 options.max_features)));
        default:
            return problem_on(rng, random_ranking_model(rng, options));
    }
}

std::function<bool(FeatureMask)> random_monotone_predicate(Rng& rng, int num_features) {
    std::vector<FeatureMask> generators;
    const FeatureMask full = full_mask(num_features);
    int count = pick_int(rng, 0, 3);
    for (int k = 0; k < count; ++k) {
        generators.push_back(static_cast<FeatureMask>(rng() % (full + 1ull)));
    }
    return [generators](FeatureMask s) {
        for (FeatureMask g : generators) {
            if ((g & ~s) == 0) return true;
        }
        return false;
    };
}

std::function<bool(FeatureMask)> dual_predicate(std::function<bool(FeatureMask)> predicate,
                                                int num_features) {
    const FeatureMask full = full_mask(num_features);
    return [predicate = std::move(predicate), full](FeatureMask s) {
        return !predicate(full & ~s);
    };
}

namespace {

ValueRemap translation_remap(Rng& rng, const ExplanationProblem& problem, RemapMode mode) {
    static const int shifts[] = {-2, -1, 1, 2, 3};
    Rational shift(shifts[pick_int(rng, 0, 4)]);
    ValueRemap remap;
    remap.mode = mode;
    for (const Value& b : realized_outputs(problem.model())) {
        remap.entries.emplace_back(b, Value::number(b.num() + shift));
    }
    return remap;
}

} // namespace

ValueRemap random_weak_remap(Rng& rng, const ExplanationProblem& problem) {
    if (problem.mode() == SimilarityMode::threshold && problem.delta() > 0) {
        return translation_remap(rng, problem, RemapMode::weak);
    }
    std::vector<Value> realized = realized_outputs(problem.model());
    std::vector<Value> images;
    bool numeric = std::all_of(realized.begin(), realized.end(),
                               [](const Value& v) { return v.is_number(); });
    if (numeric && pick_int(rng, 0, 2) > 0) {
        images = realized; // permute the realized values among themselves
    } else {
        for (size_t k = 0; k < realized.size(); ++k) {
            images.push_back(Value::token("L" + std::to_string(k)));
        }
    }
    for (int i = static_cast<int>(images.size()) - 1; i > 0; --i) {
        std::swap(images[i], images[pick_int(rng, 0, i)]);
    }
    ValueRemap remap;
    remap.mode = RemapMode::weak;
    for (size_t k = 0; k < realized.size(); ++k) {
        remap.entries.emplace_back(realized[k], images[k]);
    }
    return remap;
}

ValueRemap random_strong_remap(Rng& rng, const ExplanationProblem& problem) {
    if (problem.mode() == SimilarityMode::threshold && problem.delta() > 0) {
        return translation_remap(rng, problem, RemapMode::strong);
    }
    std::vector<Value> realized = realized_outputs(problem.model());
    const Value& q = problem.target().value;
    bool tokens = pick_int(rng, 0, 1) == 1;
    auto image = [&](int cls) {
        return tokens ? Value::token("C" + std::to_string(cls)) : Value::number(100 + cls);
    };
    bool collapse = pick_int(rng, 0, 1) == 1; // merge all non-target classes
    ValueRemap remap;
    remap.mode = RemapMode::strong;
    int next = 1;
    for (const Value& b : realized) {
        if (b == q) {
            remap.entries.emplace_back(b, image(0));
        } else {
            remap.entries.emplace_back(b, image(collapse ? 1 : next++));
        }
    }
    return remap;
}

} // namespace xshap
