#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "gapcm/exact.hpp"

namespace gapcm {

namespace {

std::string x_name(NodeId i, NodeId j) { return "x_" + std::to_string(i) + "_" + std::to_string(j); }
std::string g_name(NodeId i, NodeId j) { return "g_" + std::to_string(i) + "_" + std::to_string(j); }

OrderingModel plain_model(const InstanceView& view) {
    const CrossingMatrix c(view);
    OrderingModel model;
    model.nodes.assign(view.top_ids().begin(), view.top_ids().end());
    const std::size_t p = model.nodes.size();
    model.cost.assign(p * p, 0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) model.cost[i * p + j] = i == j ? 0 : c.at(i, j);
    }
    return model;
}

std::vector<char> chain_membership(const OrderingModel& model) {
    const std::unordered_set<NodeId> chain(model.dummy_chain.begin(), model.dummy_chain.end());
    std::vector<char> member(model.size(), 0);
    for (std::size_t i = 0; i < model.size(); ++i) member[i] = chain.contains(model.nodes[i]) ? 1 : 0;
    return member;
}

struct ParsedVar {
    char kind;
    NodeId first;
    NodeId second;
};

ParsedVar parse_var(const std::string& name) {
    const auto bad = [&] { return InputError("unrecognized variable name '" + name + "'"); };
    if (name.size() < 5 || (name[0] != 'x' && name[0] != 'g') || name[1] != '_') throw bad();
    const auto sep = name.find('_', 3);
    if (sep == std::string::npos) throw bad();
    try {
        std::size_t used = 0;
        const std::string a = name.substr(2, sep - 2);
        const std::string b = name.substr(sep + 1);
        const NodeId first = std::stoll(a, &used);
        if (used != a.size()) throw bad();
        const NodeId second = std::stoll(b, &used);
        if (used != b.size()) throw bad();
        return ParsedVar{name[0], first, second};
    } catch (const std::logic_error&) {
        throw bad();
    }
}

}  // namespace

OrderingModel build_base_oscm_model(const BipartiteInstance& inst) { return plain_model(InstanceView(inst)); }

OrderingModel build_kgap_model(const BipartiteInstance& inst, int k) {
    if (k < 1) throw InputError("k must be at least 1, got " + std::to_string(k));
    const InstanceView view(inst);
    OrderingModel model = plain_model(view);
    const CanonicalDummyOrder dummies = canonical_dummy_order(view);
    if (dummies.order.size() >= 2) {
        model.dummy_chain = dummies.order.ids();
        model.gap_rule = GapRule::at_most_k;
        model.max_gaps = k;
    }
    return model;
}

OrderingModel build_sidegap_model(const BipartiteInstance& inst) {
    const InstanceView view(inst);
    OrderingModel model = plain_model(view);
    const CanonicalDummyOrder dummies = canonical_dummy_order(view);
    const std::size_t reals = view.top_count() - dummies.order.size();
    if (dummies.order.size() >= 2 || (dummies.order.size() == 1 && reals >= 2)) {
        model.dummy_chain = dummies.order.ids();
        model.gap_rule = GapRule::side_gaps;
    }
    return model;
}

std::vector<std::string> model_variables(const OrderingModel& model) {
    std::vector<std::string> vars;
    for (NodeId i : model.nodes) {
        for (NodeId j : model.nodes) {
            if (i != j) vars.push_back(x_name(i, j));
        }
    }
    if (model.gap_rule == GapRule::at_most_k) {
        for (std::size_t t = 0; t + 1 < model.dummy_chain.size(); ++t) {
            vars.push_back(g_name(model.dummy_chain[t], model.dummy_chain[t + 1]));
        }
    }
    return vars;
}

std::vector<LinearTerm> model_objective(const OrderingModel& model) {
    std::vector<LinearTerm> terms;
    const std::size_t p = model.size();
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            if (i != j && model.coef(i, j) != 0) terms.push_back({x_name(model.nodes[i], model.nodes[j]), model.coef(i, j)});
        }
    }
    return terms;
}

std::size_t transitivity_constraint_count(const OrderingModel& model) {
    const std::size_t p = model.size();
    return p < 3 ? 0 : p * (p - 1) * (p - 2);
}

std::vector<LinearConstraint> model_constraints(const OrderingModel& model, bool include_transitivity) {
    std::vector<LinearConstraint> rows;
    const auto& v = model.nodes;
    const std::size_t p = v.size();

    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            rows.push_back({{{x_name(v[i], v[j]), 1}, {x_name(v[j], v[i]), 1}}, Relation::equal, 1});
        }
    }
    if (include_transitivity) {
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                for (std::size_t k = 0; k < p; ++k) {
                    if (i == j || j == k || i == k) continue;
                    rows.push_back({{{x_name(v[i], v[j]), 1}, {x_name(v[j], v[k]), 1}, {x_name(v[i], v[k]), -1}},
                                    Relation::less_equal,
                                    1});
                }
            }
        }
    }
    if (model.gap_rule == GapRule::none) return rows;

    const auto& chain = model.dummy_chain;
    const std::vector<char> in_chain = chain_membership(model);
    for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
        rows.push_back({{{x_name(chain[t], chain[t + 1]), 1}}, Relation::equal, 1});
    }

    if (model.gap_rule == GapRule::at_most_k) {
        for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
            for (std::size_t k = 0; k < p; ++k) {
                if (in_chain[k]) continue;
                rows.push_back({{{x_name(chain[t], v[k]), 1},
                                 {x_name(v[k], chain[t + 1]), 1},
                                 {g_name(chain[t], chain[t + 1]), -1}},
                                Relation::less_equal,
                                1});
            }
        }
        LinearConstraint budget{{}, Relation::less_equal, static_cast<Count>(model.max_gaps) - 1};
        for (std::size_t t = 0; t + 1 < chain.size(); ++t) budget.terms.push_back({g_name(chain[t], chain[t + 1]), 1});
        rows.push_back(std::move(budget));
    } else {
        for (NodeId d : chain) {
            for (std::size_t k = 0; k < p; ++k) {
                for (std::size_t l = 0; l < p; ++l) {
                    if (k == l || in_chain[k] || in_chain[l]) continue;
                    rows.push_back({{{x_name(v[k], d), 1}, {x_name(d, v[l]), 1}}, Relation::less_equal, 1});
                }
            }
        }
    }
    return rows;
}

Count model_objective_value(const OrderingModel& model, const Permutation& pi) {
    const std::size_t p = model.size();
    if (pi.size() != p) throw InputError("permutation does not match the model's nodes");
    std::vector<std::size_t> idx;
    idx.reserve(p);
    for (NodeId id : pi) {
        const auto it = std::find(model.nodes.begin(), model.nodes.end(), id);
        if (it == model.nodes.end()) throw InputError("id " + std::to_string(id) + " is not a model node");
        idx.push_back(static_cast<std::size_t>(it - model.nodes.begin()));
    }
    Count total = 0;
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) total += model.coef(idx[a], idx[b]);
    }
    return total;
}

bool model_feasible(const OrderingModel& model, const Permutation& pi) {
    if (pi.size() != model.size()) return false;
    for (NodeId id : model.nodes) {
        if (!pi.contains(id)) return false;
    }
    if (model.gap_rule == GapRule::none) return true;

    const std::unordered_set<NodeId> chain(model.dummy_chain.begin(), model.dummy_chain.end());
    const Permutation chain_order(model.dummy_chain);
    if (!(induced(pi, model.dummy_chain) == chain_order)) return false;

    if (model.gap_rule == GapRule::at_most_k) {
        int runs = 0;
        bool previous_in_chain = false;
        for (NodeId id : pi) {
            const bool here = chain.contains(id);
            if (here && !previous_in_chain) ++runs;
            previous_in_chain = here;
        }
        return runs <= model.max_gaps;
    }

    // side gaps: the nodes outside the chain are contiguous
    std::size_t first = pi.size(), last = 0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (!chain.contains(pi[i])) {
            first = std::min(first, i);
            last = i;
        }
    }
    for (std::size_t i = first; i < pi.size() && i < last; ++i) {
        if (chain.contains(pi[i])) return false;
    }
    return true;
}

std::string export_model(const OrderingModel& model) {
    using ordered_json = nlohmann::ordered_json;
    ordered_json doc;
    doc["vars"] = ordered_json::array();
    for (const auto& name : model_variables(model)) doc["vars"].push_back(ordered_json{{"name", name}});

    auto terms_json = [](const std::vector<LinearTerm>& terms) {
        ordered_json out = ordered_json::array();
        for (const auto& t : terms) out.push_back(ordered_json{{"var", t.var}, {"coef", t.coef}});
        return out;
    };
    doc["objective"] = terms_json(model_objective(model));
    doc["constraints"] = ordered_json::array();
    for (const auto& row : model_constraints(model, true)) {
        ordered_json c;
        c["terms"] = terms_json(row.terms);
        c["op"] = row.op == Relation::equal ? "=" : "<=";
        c["rhs"] = row.rhs;
        doc["constraints"].push_back(std::move(c));
    }
    return doc.dump() + "\n";
}

OrderingModel import_model(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed model: ") + e.what());
    }

    try {
        OrderingModel model;
        std::unordered_map<NodeId, std::size_t> index;
        for (const auto& var : doc.at("vars")) {
            const ParsedVar parsed = parse_var(var.at("name").get<std::string>());
            if (parsed.kind != 'x') continue;
            for (NodeId id : {parsed.first, parsed.second}) {
                if (index.emplace(id, model.nodes.size()).second) model.nodes.push_back(id);
            }
        }
        const std::size_t p = model.nodes.size();
        model.cost.assign(p * p, 0);
        for (const auto& term : doc.at("objective")) {
            const ParsedVar parsed = parse_var(term.at("var").get<std::string>());
            if (parsed.kind != 'x' || !index.contains(parsed.first) || !index.contains(parsed.second)) {
                throw InputError("objective references an unknown variable");
            }
            model.cost[index.at(parsed.first) * p + index.at(parsed.second)] = term.at("coef").get<Count>();
        }

        std::map<NodeId, NodeId> successor;
        std::unordered_set<NodeId> has_predecessor;
        std::vector<NodeId> side_dummies;
        std::optional<Count> budget;
        for (const auto& row : doc.at("constraints")) {
            const std::string op = row.at("op").get<std::string>();
            const Count rhs = row.at("rhs").get<Count>();
            std::vector<ParsedVar> vars;
            std::vector<Count> coefs;
            for (const auto& term : row.at("terms")) {
                vars.push_back(parse_var(term.at("var").get<std::string>()));
                coefs.push_back(term.at("coef").get<Count>());
            }
            const bool any_g = std::any_of(vars.begin(), vars.end(), [](const ParsedVar& v) { return v.kind == 'g'; });
            const bool all_g = std::all_of(vars.begin(), vars.end(), [](const ParsedVar& v) { return v.kind == 'g'; });

            if (op == "=" && vars.size() == 2 && !any_g) continue;  // antisymmetry
            if (op == "=" && vars.size() == 1 && !any_g && rhs == 1) {
                successor[vars[0].first] = vars[0].second;
                has_predecessor.insert(vars[0].second);
                continue;
            }
            if (op != "<=") throw InputError("unrecognized constraint relation '" + op + "'");
            if (vars.size() == 3 && !any_g) continue;  // transitivity
            if (vars.size() == 3 && any_g) continue;   // gap link
            if (!vars.empty() && all_g) {
                budget = rhs;
                continue;
            }
            if (vars.size() == 2 && !any_g && coefs[0] == 1 && coefs[1] == 1 && rhs == 1) {
                side_dummies.push_back(vars[0].second);
                continue;
            }
            throw InputError("unrecognized constraint shape");
        }

        for (const auto& [from, to] : successor) {
            if (has_predecessor.contains(from)) continue;
            for (NodeId at = from;;) {
                model.dummy_chain.push_back(at);
                auto next = successor.find(at);
                if (next == successor.end()) break;
                at = next->second;
            }
        }
        if (model.dummy_chain.size() != successor.size() + (successor.empty() ? 0 : 1)) {
            throw InputError("dummy order constraints do not form a single chain");
        }
        if (model.dummy_chain.empty() && !side_dummies.empty()) model.dummy_chain.push_back(side_dummies.front());

        if (budget) {
            model.gap_rule = GapRule::at_most_k;
            model.max_gaps = static_cast<int>(*budget + 1);
        } else if (!model.dummy_chain.empty()) {
            model.gap_rule = GapRule::side_gaps;
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed model: ") + e.what());
    }
}

std::string_view to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal:
            return "optimal";
        case SolveStatus::timeout_incumbent:
            return "timeout_incumbent";
        case SolveStatus::infeasible:
            return "infeasible";
    }
    return "unknown";
}

}  // namespace gapcm
