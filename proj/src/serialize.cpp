#include "hforge/serialize.hpp"

#include <stdexcept>

namespace hforge {

Json to_json(const Rat& x) { return x.str(); }

Json to_json(const Cyclo& x) {
    Cyclo s = x.simplified();
    Json c = Json::array();
    for (const auto& r : s.coeffs()) c.push_back(to_json(r));
    return Json{{"m", s.conductor()}, {"coeffs", c}};
}

Json to_json(const CycloVector& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

Json to_json(const RatMatrix& m) {
    Json out = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

Json to_json(const LaurentPoly& x) { return x.str(); }

Json to_json(const LaurentMatrix& m) {
    Json out = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        out.push_back(row);
    }
    return out;
}

Json to_json(const CosetSum& s) {
    Json out = Json::array();
    for (const auto& t : s.terms()) out.push_back(Json{{"matrix", to_json(t.rep)}, {"coefficient", to_json(t.coeff)}});
    return out;
}

Json to_json(const TowerClass& a, const RayTower& tower) {
    Json out{{"x", a.x}};
    if (tower.class_number() > 1) out["c"] = a.c;
    return out;
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string()) throw std::invalid_argument("expected a rational string, got " + j.dump());
    return Rat::parse(j.get<std::string>());
}

Cyclo cyclo_from_json(const Json& j) {
    if (j.is_string() || j.is_number_integer()) return Cyclo(rat_from_json(j));
    if (!j.is_object() || !j.contains("m") || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw std::invalid_argument("expected {m, coeffs}, got " + j.dump());
    long m = j["m"].get<long>();
    if (m < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
    std::vector<Rat> c;
    for (const auto& x : j["coeffs"]) c.push_back(rat_from_json(x));
    return Cyclo(m, std::move(c));
}

CycloVector cyclo_vector_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of cyclotomic values");
    CycloVector v;
    for (const auto& x : j) v.push_back(cyclo_from_json(x));
    return v;
}

Json distribution_to_json(const Distribution& mu) {
    const RayTower& t = mu.tower();
    Json out{{"p", t.p()}};
    if (t.class_number() > 1) out["class_number"] = t.class_number();
    out["dim"] = mu.dim();
    Json levels = Json::array();
    for (long m = mu.min_level(); m <= mu.max_level(); ++m) {
        Json cosets = Json::array();
        for (const auto& a : t.classes(m)) {
            Json c = to_json(a, t);
            c["value"] = to_json(mu.value(m, a));
            cosets.push_back(c);
        }
        levels.push_back(Json{{"m", m}, {"cosets", cosets}});
    }
    out["levels"] = levels;
    return out;
}

Distribution distribution_from_json(const Json& j) {
    try {
        long p = j.at("p").get<long>();
        long h = j.value("class_number", 1L);
        RayTower t = RayTower::with_class_group(p, h);
        const Json& levels = j.at("levels");
        if (!levels.is_array() || levels.empty()) throw std::invalid_argument("distribution: no levels");
        long m0 = levels.front().at("m").get<long>();
        long m1 = levels.back().at("m").get<long>();
        size_t dim = j.contains("dim") ? j["dim"].get<size_t>()
                                       : levels.front().at("cosets").at(0).at("value").size();
        Distribution mu(t, dim, m0, m1);
        for (size_t i = 0; i < levels.size(); ++i) {
            long m = levels[i].at("m").get<long>();
            if (m != m0 + static_cast<long>(i)) throw std::invalid_argument("distribution: levels must be consecutive");
            const Json& cosets = levels[i].at("cosets");
            if (static_cast<long>(cosets.size()) != t.size(m))
                throw std::invalid_argument("distribution: level " + std::to_string(m) + " has " +
                                            std::to_string(cosets.size()) + " cosets, expected " +
                                            std::to_string(t.size(m)));
            for (const auto& c : cosets) {
                TowerClass a{c.at("x").get<long>(), c.value("c", 0L)};
                CycloVector v = cyclo_vector_from_json(c.at("value"));
                if (v.size() != dim) throw std::invalid_argument("distribution: value of wrong dimension");
                mu.set(m, a, std::move(v));
            }
        }
        return mu;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("distribution: ") + e.what());
    }
}

}  // namespace hforge
