#include "xshap/model_io.hpp"

#include "xshap/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>

namespace xshap {

namespace {

const Json& field(const Json& j, const char* name, const std::string& path) {
    if (!j.is_object()) throw schema_error(path + ": expected an object");
    auto it = j.find(name);
    if (it == j.end()) throw schema_error(path + ": missing field \"" + name + "\"");
    return *it;
}

const Json* optional_field(const Json& j, const char* name) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(name);
    return it == j.end() ? nullptr : &*it;
}

const Json& as_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw schema_error(path + ": expected an array");
    return j;
}

int as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        throw schema_error(path + ": expected an integer");
    }
    return j.get<int>();
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw schema_error(path + ": expected a string");
    return j.get<std::string>();
}

Rational parse_rational_field(const Json& j, const std::string& path) {
    Value v = parse_value(j, path);
    if (!v.is_number()) throw schema_error(path + ": expected a rational value");
    return v.num();
}

OutputKind parse_output_kind(const std::string& name, const std::string& path) {
    if (name == "categorical") return OutputKind::categorical;
    if (name == "ordinal") return OutputKind::ordinal;
    if (name == "real") return OutputKind::real;
    throw schema_error(path + ": unknown output kind \"" + name + "\"");
}

// Inference when the file omits output_kind: tokens make the outputs
// categorical, all-integer numerics are ordinal classes, anything else is a
// real-valued (regression) output.
OutputKind infer_output_kind(const std::vector<Value>& values) {
    bool all_int = true;
    for (const Value& v : values) {
        if (v.is_token()) return OutputKind::categorical;
        all_int = all_int && v.is_integer();
    }
    return all_int ? OutputKind::ordinal : OutputKind::real;
}

OutputKind resolve_output_kind(const Json& doc, const std::vector<Value>& values,
                               const std::string& path) {
    if (const Json* explicit_kind = optional_field(doc, "output_kind")) {
        OutputKind kind = parse_output_kind(as_string(*explicit_kind, path + ".output_kind"),
                                            path + ".output_kind");
        if (kind != OutputKind::categorical) {
            for (const Value& v : values) {
                if (v.is_token()) {
                    throw schema_error(path + ".output_kind: " + output_kind_name(kind) +
                                       " outputs cannot contain token \"" + v.tok() + "\"");
                }
            }
        }
        return kind;
    }
    return infer_output_kind(values);
}

FeatureSpace parse_domains(const Json& doc, const IoOptions& options, const std::string& path) {
    const Json& arr = as_array(field(doc, "domains", path), path + ".domains");
    FeatureSpace space;
    space.point_cap = options.point_cap;
    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string dpath = path + ".domains[" + std::to_string(i) + "]";
        const Json& domain = as_array(arr[i], dpath);
        std::vector<Value> values;
        for (size_t k = 0; k < domain.size(); ++k) {
            values.push_back(parse_value(domain[k], dpath + "[" + std::to_string(k) + "]"));
        }
        space.domains.push_back(std::move(values));
    }
    try {
        space.validate();
    } catch (const error& e) {
        throw schema_error(path + ".domains: " + e.what());
    }
    return space;
}

TabularModel parse_table(const Json& doc, const FeatureSpace& space, const std::string& path) {
    const Json& rows = as_array(field(doc, "table", path), path + ".table");
    const std::uint64_t total = space.total_points();
    TabularModel tab;
    tab.outputs.resize(total);
    std::vector<char> seen(total, 0);
    std::vector<Value> values;
    for (size_t r = 0; r < rows.size(); ++r) {
        const std::string rpath = path + ".table[" + std::to_string(r) + "]";
        Point p = parse_point(field(rows[r], "point", rpath), space, rpath + ".point");
        std::uint64_t rank = point_rank(space, p);
        if (seen[rank]) throw schema_error(rpath + ".point: duplicate table entry");
        seen[rank] = 1;
        tab.outputs[rank] = parse_value(field(rows[r], "output", rpath), rpath + ".output");
        values.push_back(tab.outputs[rank]);
    }
    if (rows.size() != total) {
        throw schema_error(path + ".table: " + std::to_string(rows.size()) + " entries for " +
                           std::to_string(total) + " feature-space points");
    }
    tab.out_kind = resolve_output_kind(doc, values, path);
    return tab;
}

TreeModel parse_tree(const Json& doc, const FeatureSpace& space, const std::string& path) {
    const Json& arr = as_array(field(doc, "nodes", path), path + ".nodes");
    if (arr.empty()) throw schema_error(path + ".nodes: tree needs at least one node");
    TreeModel tree;
    tree.nodes.resize(arr.size());
    std::vector<char> seen(arr.size(), 0);
    std::vector<Value> leaf_values;
    for (size_t r = 0; r < arr.size(); ++r) {
        const std::string npath = path + ".nodes[" + std::to_string(r) + "]";
        int id = as_int(field(arr[r], "id", npath), npath + ".id");
        if (id < 0 || id >= static_cast<int>(arr.size())) {
            throw schema_error(npath + ".id: node ids must cover 0.." +
                               std::to_string(arr.size() - 1));
        }
        if (seen[id]) throw schema_error(npath + ".id: duplicate node id " + std::to_string(id));
        seen[id] = 1;
        TreeNode node;
        if (const Json* output = optional_field(arr[r], "output")) {
            node.output = parse_value(*output, npath + ".output");
            leaf_values.push_back(*node.output);
        } else {
            node.feature = as_int(field(arr[r], "feature", npath), npath + ".feature") - 1;
            if (node.feature < 0 || node.feature >= space.size()) {
                throw schema_error(npath + ".feature: no such feature");
            }
            const Json& edges = as_array(field(arr[r], "edges", npath), npath + ".edges");
            for (size_t e = 0; e < edges.size(); ++e) {
                const std::string epath = npath + ".edges[" + std::to_string(e) + "]";
                TreeEdge edge;
                edge.child = as_int(field(edges[e], "to", epath), epath + ".to");
                const Json& vals = as_array(field(edges[e], "values", epath), epath + ".values");
                for (size_t k = 0; k < vals.size(); ++k) {
                    const std::string vpath = epath + ".values[" + std::to_string(k) + "]";
                    Value v = parse_value(vals[k], vpath);
                    const auto& domain = space.domains[node.feature];
                    auto it = std::find(domain.begin(), domain.end(), v);
                    if (it == domain.end()) {
                        throw schema_error(vpath + ": value " + v.str() +
                                           " not in the domain of feature " +
                                           std::to_string(node.feature + 1));
                    }
                    edge.values.push_back(static_cast<int>(it - domain.begin()));
                }
                node.edges.push_back(std::move(edge));
            }
        }
        tree.nodes[id] = std::move(node);
    }
    tree.out_kind = resolve_output_kind(doc, leaf_values, path);
    return tree;
}

CircuitModel parse_circuit(const Json& doc, const FeatureSpace& space, const std::string& path) {
    const Json& arr = as_array(field(doc, "gates", path), path + ".gates");
    CircuitModel circuit;
    for (size_t g = 0; g < arr.size(); ++g) {
        const std::string gpath = path + ".gates[" + std::to_string(g) + "]";
        Gate gate;
        std::string op = as_string(field(arr[g], "op", gpath), gpath + ".op");
        if (op == "var") {
            gate.op = GateOp::variable;
            gate.var = as_int(field(arr[g], "feature", gpath), gpath + ".feature") - 1;
            if (gate.var < 0 || gate.var >= space.size()) {
                throw schema_error(gpath + ".feature: no such feature");
            }
        } else if (op == "const") {
            gate.op = GateOp::constant;
            int v = as_int(field(arr[g], "value", gpath), gpath + ".value");
            if (v != 0 && v != 1) throw schema_error(gpath + ".value: constants must be 0 or 1");
            gate.value = v == 1;
        } else {
            if (op == "not") {
                gate.op = GateOp::g_not;
            } else if (op == "and") {
                gate.op = GateOp::g_and;
            } else if (op == "or") {
                gate.op = GateOp::g_or;
            } else {
                throw schema_error(gpath + ".op: unknown gate op \"" + op + "\"");
            }
            const Json& inputs = as_array(field(arr[g], "inputs", gpath), gpath + ".inputs");
            for (size_t k = 0; k < inputs.size(); ++k) {
                gate.inputs.push_back(
                    as_int(inputs[k], gpath + ".inputs[" + std::to_string(k) + "]"));
            }
        }
        circuit.gates.push_back(std::move(gate));
    }
    return circuit;
}

RankingModel parse_ranking(const Json& doc, const FeatureSpace& space, const std::string& path) {
    RankingModel ranking;
    const Json& labels = as_array(field(doc, "labels", path), path + ".labels");
    for (size_t k = 0; k < labels.size(); ++k) {
        ranking.labels.push_back(parse_value(labels[k], path + ".labels[" + std::to_string(k) + "]"));
    }
    ranking.out_kind = resolve_output_kind(doc, ranking.labels, path);
    const Json& heads = as_array(field(doc, "heads", path), path + ".heads");
    for (size_t h = 0; h < heads.size(); ++h) {
        const std::string hpath = path + ".heads[" + std::to_string(h) + "]";
        std::string kind = as_string(field(heads[h], "kind", hpath), hpath + ".kind");
        if (kind == "tabular") {
            TabularModel tab = parse_table(heads[h], space, hpath);
            tab.out_kind = OutputKind::real;
            ranking.heads.emplace_back(std::move(tab));
        } else if (kind == "tree") {
            TreeModel tree = parse_tree(heads[h], space, hpath);
            tree.out_kind = OutputKind::real;
            ranking.heads.emplace_back(std::move(tree));
        } else {
            throw schema_error(hpath + ".kind: ranking heads must be tabular or tree");
        }
    }
    return ranking;
}

} // namespace

Value parse_value(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Value::number(Rational(j.get<long long>()));
    if (j.is_number_unsigned()) return Value::number(Rational(j.get<unsigned long long>()));
    if (j.is_number_float()) {
        throw schema_error(path + ": raw JSON floats are not parsed exactly; write the value as "
                                  "a string, e.g. \"" +
                           std::to_string(j.get<double>()) + "\"");
    }
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (is_rational_literal(s)) return Value::number(parse_rational(s));
        return Value::token(std::move(s));
    }
    throw schema_error(path + ": expected a number or string value");
}

Json value_to_json(const Value& v) {
    if (v.is_token()) return Json(v.tok());
    if (v.is_integer() && numerator(v.num()) >= std::numeric_limits<long long>::min() &&
        numerator(v.num()) <= std::numeric_limits<long long>::max()) {
        return Json(numerator(v.num()).convert_to<long long>());
    }
    return Json(to_fraction_string(v.num()));
}

Point parse_point(const Json& arr, const FeatureSpace& space, const std::string& path) {
    as_array(arr, path);
    if (static_cast<int>(arr.size()) != space.size()) {
        throw schema_error(path + ": point has " + std::to_string(arr.size()) +
                           " coordinates, expected " + std::to_string(space.size()));
    }
    Point p;
    for (int i = 0; i < space.size(); ++i) {
        Value v = parse_value(arr[i], path + "[" + std::to_string(i) + "]");
        const auto& domain = space.domains[i];
        auto it = std::find(domain.begin(), domain.end(), v);
        if (it == domain.end()) {
            throw domain_violation(path + "[" + std::to_string(i) + "]: value " + v.str() +
                                   " not in the domain of feature " + std::to_string(i + 1));
        }
        p.vi.push_back(static_cast<int>(it - domain.begin()));
    }
    return p;
}

Json point_to_json(const FeatureSpace& space, const Point& p) {
    Json arr = Json::array();
    for (int i = 0; i < p.size(); ++i) arr.push_back(value_to_json(point_value(space, p, i)));
    return arr;
}

Point parse_point_text(const std::string& text, const FeatureSpace& space) {
    std::string trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) {
        trimmed.erase(trimmed.begin());
    }
    Json arr;
    if (!trimmed.empty() && trimmed.front() == '[') {
        try {
            arr = Json::parse(trimmed);
        } catch (const nlohmann::json::exception& e) {
            throw schema_error(std::string("point: ") + e.what());
        }
    } else {
        arr = Json::array();
        size_t start = 0;
        while (start <= trimmed.size()) {
            size_t comma = trimmed.find(',', start);
            std::string item = trimmed.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) {
                item.erase(item.begin());
            }
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) {
                item.pop_back();
            }
            // quote anything that is not a plain integer so it parses exactly
            if (is_rational_literal(item) && item.find_first_of("./") == std::string::npos) {
                arr.push_back(Json::parse(item));
            } else {
                arr.push_back(item);
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return parse_point(arr, space, "point");
}

Model parse_model(const Json& doc, const IoOptions& options) {
    const std::string path = "model";
    std::string kind = as_string(field(doc, "kind", path), path + ".kind");
    FeatureSpace space = parse_domains(doc, options, path);

    Model::Variant variant = [&]() -> Model::Variant {
        if (kind == "tabular") return parse_table(doc, space, path);
        if (kind == "tree") return parse_tree(doc, space, path);
        if (kind == "circuit") return parse_circuit(doc, space, path);
        if (kind == "ranking") return parse_ranking(doc, space, path);
        throw schema_error(path + ".kind: unknown model kind \"" + kind + "\"");
    }();

    Model model(std::move(space), std::move(variant));
    check_nonconstant(model);
    if (CircuitModel* circuit = model.circuit()) {
        CircuitValidation report = validate_circuit(model.space(), *circuit);
        circuit->deterministic = report.deterministic;
        circuit->decomposable = report.decomposable;
    }
    return model;
}

Model load_model(const std::string& path, const IoOptions& options) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open model file " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(path + ": " + e.what());
    }
    return parse_model(doc, options);
}

Json serialize_model(const Model& model) {
    Json doc = Json::object();
    doc["kind"] = model.kind_name();
    Json domains = Json::array();
    for (const auto& domain : model.space().domains) {
        Json d = Json::array();
        for (const Value& v : domain) d.push_back(value_to_json(v));
        domains.push_back(std::move(d));
    }
    doc["domains"] = std::move(domains);

    const FeatureSpace& space = model.space();
    auto table_json = [&](const TabularModel& tab) {
        Json rows = Json::array();
        for (std::uint64_t rank = 0; rank < tab.outputs.size(); ++rank) {
            Json row = Json::object();
            row["point"] = point_to_json(space, point_from_rank(space, rank));
            row["output"] = value_to_json(tab.outputs[rank]);
            rows.push_back(std::move(row));
        }
        return rows;
    };
    auto nodes_json = [&](const TreeModel& tree) {
        Json nodes = Json::array();
        for (size_t id = 0; id < tree.nodes.size(); ++id) {
            const TreeNode& node = tree.nodes[id];
            Json n = Json::object();
            n["id"] = id;
            if (node.is_leaf()) {
                n["output"] = value_to_json(*node.output);
            } else {
                n["feature"] = node.feature + 1;
                Json edges = Json::array();
                for (const TreeEdge& edge : node.edges) {
                    Json e = Json::object();
                    Json values = Json::array();
                    for (int vi : edge.values) {
                        values.push_back(value_to_json(space.domains[node.feature][vi]));
                    }
                    e["values"] = std::move(values);
                    e["to"] = edge.child;
                    edges.push_back(std::move(e));
                }
                n["edges"] = std::move(edges);
            }
            nodes.push_back(std::move(n));
        }
        return nodes;
    };

    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TabularModel>) {
                doc["output_kind"] = output_kind_name(v.out_kind);
                doc["table"] = table_json(v);
            } else if constexpr (std::is_same_v<T, TreeModel>) {
                doc["output_kind"] = output_kind_name(v.out_kind);
                doc["nodes"] = nodes_json(v);
            } else if constexpr (std::is_same_v<T, CircuitModel>) {
                Json gates = Json::array();
                for (const Gate& gate : v.gates) {
                    Json g = Json::object();
                    switch (gate.op) {
                        case GateOp::variable:
                            g["op"] = "var";
                            g["feature"] = gate.var + 1;
                            break;
                        case GateOp::constant:
                            g["op"] = "const";
                            g["value"] = gate.value ? 1 : 0;
                            break;
                        case GateOp::g_not:
                        case GateOp::g_and:
                        case GateOp::g_or:
                            g["op"] = gate.op == GateOp::g_not ? "not"
                                      : gate.op == GateOp::g_and ? "and"
                                                                 : "or";
                            g["inputs"] = gate.inputs;
                            break;
                    }
                    gates.push_back(std::move(g));
                }
                doc["gates"] = std::move(gates);
                if (v.deterministic) doc["deterministic"] = *v.deterministic;
                if (v.decomposable) doc["decomposable"] = *v.decomposable;
            } else {
                doc["output_kind"] = output_kind_name(v.out_kind);
                Json heads = Json::array();
                for (const RankingHead& head : v.heads) {
                    Json h = Json::object();
                    if (const auto* tab = std::get_if<TabularModel>(&head)) {
                        h["kind"] = "tabular";
                        h["output_kind"] = output_kind_name(tab->out_kind);
                        h["table"] = table_json(*tab);
                    } else {
                        const auto& tree = std::get<TreeModel>(head);
                        h["kind"] = "tree";
                        h["output_kind"] = output_kind_name(tree.out_kind);
                        h["nodes"] = nodes_json(tree);
                    }
                    heads.push_back(std::move(h));
                }
                doc["heads"] = std::move(heads);
                Json labels = Json::array();
                for (const Value& label : v.labels) labels.push_back(value_to_json(label));
                doc["labels"] = std::move(labels);
            }
        },
        model.variant());
    return doc;
}

Instance parse_instance(const Json& doc, const FeatureSpace& space) {
    Instance instance;
    instance.point = parse_point(field(doc, "point", "instance"), space, "instance.point");
    instance.delta = 0;
    if (const Json* delta = optional_field(doc, "delta")) {
        instance.delta = parse_rational_field(*delta, "instance.delta");
        if (instance.delta < 0) throw schema_error("instance.delta: must be non-negative");
    }
    return instance;
}

Instance load_instance(const std::string& path, const FeatureSpace& space) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open instance file " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(path + ": " + e.what());
    }
    return parse_instance(doc, space);
}

Json serialize_instance(const FeatureSpace& space, const Instance& instance) {
    Json doc = Json::object();
    doc["point"] = point_to_json(space, instance.point);
    if (instance.delta != 0) doc["delta"] = to_fraction_string(instance.delta);
    return doc;
}

} // namespace xshap
