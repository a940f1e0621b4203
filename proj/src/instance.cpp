#include "jrp/instance.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace jrp {

using nlohmann::json;

void Instance::validate() const {
    if (!(k0 >= 0.0)) throw std::invalid_argument("instance: k0 must be >= 0");
    if (commodities.empty()) throw std::invalid_argument("instance: need at least one commodity");
    for (std::size_t i = 0; i < commodities.size(); ++i) {
        if (!(commodities[i].k > 0.0) || !(commodities[i].h > 0.0)) {
            throw std::invalid_argument("instance: commodity " + std::to_string(i) +
                                        " must have k > 0 and h > 0");
        }
    }
    if (resources) {
        const auto& r = *resources;
        if (r.alpha.size() != r.beta.size())
            throw std::invalid_argument("instance: alpha row count must match beta length");
        for (std::size_t d = 0; d < r.alpha.size(); ++d) {
            if (!(r.beta[d] > 0.0)) throw std::invalid_argument("instance: beta must be > 0");
            if (r.alpha[d].size() != commodities.size())
                throw std::invalid_argument("instance: alpha row width must equal n");
            for (double a : r.alpha[d]) {
                if (!(a >= 0.0)) throw std::invalid_argument("instance: alpha entries must be >= 0");
            }
        }
    }
}

Instance parse_instance(const std::string& json_text, std::vector<std::string>* warnings) {
    const json j = json::parse(json_text);
    Instance inst;
    inst.k0 = j.at("k0").get<double>();
    for (const auto& c : j.at("commodities")) {
        inst.commodities.push_back({c.at("k").get<double>(), c.at("h").get<double>()});
    }
    if (j.contains("resources") && !j["resources"].is_null()) {
        Resources res;
        const auto& jr = j["resources"];
        const auto alpha = jr.at("alpha").get<std::vector<std::vector<double>>>();
        const auto beta = jr.at("beta").get<std::vector<double>>();
        if (alpha.size() != beta.size())
            throw std::invalid_argument("instance: alpha row count must match beta length");
        for (std::size_t d = 0; d < alpha.size(); ++d) {
            bool any_positive = false;
            for (double a : alpha[d]) any_positive = any_positive || a > 0.0;
            if (!any_positive) {
                if (warnings != nullptr)
                    warnings->push_back("dropping resource row " + std::to_string(d) +
                                        ": no positive alpha entry");
                continue;
            }
            res.alpha.push_back(alpha[d]);
            res.beta.push_back(beta[d]);
        }
        if (!res.beta.empty()) inst.resources = std::move(res);
    }
    inst.validate();
    return inst;
}

Instance load_instance(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), warnings);
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["k0"] = inst.k0;
    j["commodities"] = json::array();
    for (const auto& c : inst.commodities) {
        j["commodities"].push_back({{"k", c.k}, {"h", c.h}});
    }
    if (inst.resources) {
        j["resources"] = {{"alpha", inst.resources->alpha}, {"beta", inst.resources->beta}};
    } else {
        j["resources"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace jrp
