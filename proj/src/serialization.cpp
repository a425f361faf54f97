#include "chaoscalc/serialization.hpp"

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

std::string index_to_string(const MultiIndex& index) {
    std::string text;
    for (int entry : index) {
        if (!text.empty()) text += ',';
        text += std::to_string(entry);
    }
    return text;
}

MultiIndex index_from_string(const std::string& text) {
    MultiIndex index;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string piece = text.substr(pos, comma - pos);
        try {
            index.push_back(std::stoi(piece));
        } catch (const std::exception&) {
            throw Error("index_from_string: malformed entry \"" + piece + "\"");
        }
        pos = comma + 1;
    }
    return index;
}

void to_json(nlohmann::json& j, const BanachSpaceModel& space) {
    j = nlohmann::json{{"d", space.d}, {"norm", norm_name(space.tag)}};
}

void from_json(const nlohmann::json& j, BanachSpaceModel& space) {
    space.d = j.at("d").get<int>();
    space.tag = norm_from_name(j.at("norm").get<std::string>());
    space.custom_norm = nullptr;
    space.validate();
}

void to_json(nlohmann::json& j, const ChaosExpansion& f) {
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [c, coeff] : f.terms()) terms[c.to_string()] = coeff;
    j = nlohmann::json{{"n", f.dim_n()}, {"space", f.space()}, {"terms", std::move(terms)}};
}

void from_json(const nlohmann::json& j, ChaosExpansion& f) {
    const auto space = j.at("space").get<BanachSpaceModel>();
    f = ChaosExpansion(j.at("n").get<int>(), space);
    for (const auto& [key, value] : j.at("terms").items()) {
        f.set_term(CountVector::parse(key), value.get<std::vector<double>>());
    }
}

void to_json(nlohmann::json& j, const ElementaryOperator& t) {
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [index, coeff] : t.table()) table[index_to_string(index)] = coeff;
    j = nlohmann::json{
        {"m", t.order()}, {"n", t.dim_n()}, {"space", t.space()}, {"table", std::move(table)}};
}

void from_json(const nlohmann::json& j, ElementaryOperator& t) {
    const auto space = j.at("space").get<BanachSpaceModel>();
    t = ElementaryOperator(j.at("m").get<int>(), j.at("n").get<int>(), space);
    for (const auto& [key, value] : j.at("table").items()) {
        t.set_term(index_from_string(key), value.get<std::vector<double>>());
    }
}

void to_json(nlohmann::json& j, const TetraSimpleFunction& f) {
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [index, coeff] : f.table()) table[index_to_string(index)] = coeff;
    j = nlohmann::json{{"m", f.order()}, {"space", f.space()}, {"table", std::move(table)}};
}

void from_json(const nlohmann::json& j, TetraSimpleFunction& f) {
    const auto space = j.at("space").get<BanachSpaceModel>();
    f = TetraSimpleFunction(j.at("m").get<int>(), space);
    for (const auto& [key, value] : j.at("table").items()) {
        f.set_term(index_from_string(key), value.get<std::vector<double>>());
    }
}

void to_json(nlohmann::json& j, const MeasureSpaceModel& m) {
    j = nlohmann::json{{"masses", m.masses}};
}

void from_json(const nlohmann::json& j, MeasureSpaceModel& m) {
    m.masses = j.at("masses").get<std::vector<double>>();
    m.validate();
}

void to_json(nlohmann::json& j, const EstimateResult& r) {
    j = nlohmann::json{{"estimate", r.estimate},
                       {"std_error", r.std_error},
                       {"samples", r.samples},
                       {"seed", r.seed}};
}

void from_json(const nlohmann::json& j, EstimateResult& r) {
    r.estimate = j.at("estimate").get<double>();
    r.std_error = j.at("std_error").get<double>();
    r.samples = j.at("samples").get<std::int64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(nlohmann::json& j, const DecouplingInstance& inst) {
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [index, coeff] : inst.coefficients.table()) {
        table[index_to_string(index)] = coeff;
    }
    j = nlohmann::json{{"case", case_name(inst.tag)},
                       {"m", inst.m},
                       {"n", inst.dim_n},
                       {"space", inst.space},
                       {"table", std::move(table)}};
}

void from_json(const nlohmann::json& j, DecouplingInstance& inst) {
    inst.tag = case_from_name(j.at("case").get<std::string>());
    inst.m = j.at("m").get<int>();
    inst.dim_n = j.at("n").get<int>();
    inst.space = j.at("space").get<BanachSpaceModel>();
    inst.coefficients = ElementaryOperator(inst.m, inst.dim_n, inst.space);
    for (const auto& [key, value] : j.at("table").items()) {
        inst.coefficients.set_term(index_from_string(key), value.get<std::vector<double>>());
    }
    inst.validate();
}

}  // namespace chaoscalc
