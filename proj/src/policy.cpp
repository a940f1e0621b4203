#include "jrp/policy.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "jrp/eoq.hpp"
#include "jrp/errors.hpp"
#include "jrp/oracle.hpp"

namespace jrp {

using nlohmann::json;

double Policy::min_interval() const {
    if (intervals.empty()) throw std::invalid_argument("policy: empty interval vector");
    double m = intervals.front().value;
    for (const auto& t : intervals) m = std::min(m, t.value);
    return m;
}

bool Policy::all_exact() const {
    for (const auto& t : intervals) {
        if (!t.exact) return false;
    }
    return true;
}

std::vector<double> Policy::values() const {
    std::vector<double> out;
    out.reserve(intervals.size());
    for (const auto& t : intervals) out.push_back(t.value);
    return out;
}

std::vector<Rational> Policy::exact_values() const {
    std::vector<Rational> out;
    out.reserve(intervals.size());
    for (const auto& t : intervals) {
        if (!t.exact) throw unsupported_evaluation("policy: interval has no exact representation");
        out.push_back(*t.exact);
    }
    return out;
}

Policy Policy::general(const std::vector<double>& intervals) {
    Policy p;
    for (double v : intervals) p.intervals.push_back(TimeValue::of(v));
    return p;
}

Policy Policy::general_exact(const std::vector<Rational>& intervals) {
    Policy p;
    for (const auto& r : intervals) p.intervals.push_back(TimeValue::of(r));
    return p;
}

Policy Policy::common_base(const Rational& delta, const std::vector<BigInt>& multipliers) {
    Policy p;
    p.structure = CommonBaseStructure{delta};
    for (const auto& m : multipliers) {
        if (m <= 0) throw std::invalid_argument("policy: multipliers must be >= 1");
        p.intervals.push_back(TimeValue::of(Rational(m) * delta));
    }
    return p;
}

namespace {

struct JointEvaluation {
    double joint;
    JointMethod method;
    double lo, hi;
};

JointEvaluation evaluate_joint(const Instance& inst, const Policy& p) {
    if (inst.k0 == 0.0) return {0.0, JointMethod::base_formula, 0.0, 0.0};

    if (const auto* cb = std::get_if<CommonBaseStructure>(&p.structure)) {
        const double joint = inst.k0 / cb->delta.to_double();
        return {joint, JointMethod::base_formula, joint, joint};
    }

    if (const auto* rs = std::get_if<RepresentativeSetStructure>(&p.structure)) {
        // Components contribute additively up to a 1-eps factor; the sum of
        // per-component exact densities is a certified upper end.
        std::map<int, std::vector<Rational>> by_component;
        for (std::size_t r = 0; r < rs->reps.size(); ++r) {
            by_component[rs->component[r]].push_back(rs->reps[r]);
        }
        Rational sum(0);
        for (const auto& [id, reps] : by_component) {
            (void)id;
            sum += exact_density(reps).value;
        }
        const double estimate = inst.k0 * sum.to_double();
        return {estimate, JointMethod::component_estimate, (1.0 - rs->eps) * estimate, estimate};
    }

    if (!p.all_exact()) {
        throw unsupported_evaluation(
            "total_cost: general policy with floating-only intervals has no exact joint-cost "
            "path; snap to rationals or supply structure");
    }
    const Rational density = exact_density(p.exact_values()).value;
    const double joint = inst.k0 * density.to_double();
    return {joint, JointMethod::exact_lcm, joint, joint};
}

}  // namespace

CostBreakdown total_cost(const Instance& inst, const Policy& p) {
    if (p.size() != inst.size())
        throw std::invalid_argument("total_cost: policy size does not match instance");
    const JointEvaluation j = evaluate_joint(inst, p);
    double eoq = 0.0;
    for (std::size_t i = 0; i < inst.size(); ++i) {
        eoq += eoq_cost(inst.commodities[i], p.intervals[i].value);
    }
    CostBreakdown out;
    out.joint = j.joint;
    out.eoq = eoq;
    out.total = j.joint + eoq;
    out.joint_method = j.method;
    out.joint_lo = j.lo;
    out.joint_hi = j.hi;
    return out;
}

namespace {

json time_value_to_json(const TimeValue& t) {
    if (t.exact) return json(t.exact->str());
    return json(t.value);
}

TimeValue time_value_from_json(const json& j) {
    if (j.is_string()) return TimeValue::of(Rational::parse(j.get<std::string>()));
    return TimeValue::of(j.get<double>());
}

}  // namespace

std::string policy_to_json(const Policy& p) {
    json j;
    j["intervals"] = json::array();
    for (const auto& t : p.intervals) j["intervals"].push_back(time_value_to_json(t));
    if (std::holds_alternative<GeneralStructure>(p.structure)) {
        j["structure"] = "general";
    } else if (const auto* cb = std::get_if<CommonBaseStructure>(&p.structure)) {
        j["structure"] = "common-base";
        j["delta"] = cb->delta.str();
    } else {
        const auto& rs = std::get<RepresentativeSetStructure>(p.structure);
        j["structure"] = "representative-set";
        j["reps"] = json::array();
        for (const auto& r : rs.reps) j["reps"].push_back(r.str());
        j["component"] = rs.component;
        j["assignment"] = rs.assignment;
        j["eps"] = rs.eps;
    }
    return j.dump(2);
}

Policy parse_policy(const std::string& json_text) {
    const json j = json::parse(json_text);
    Policy p;
    for (const auto& t : j.at("intervals")) p.intervals.push_back(time_value_from_json(t));
    const std::string structure = j.value("structure", "general");
    if (structure == "general") {
        p.structure = GeneralStructure{};
    } else if (structure == "common-base") {
        p.structure = CommonBaseStructure{Rational::parse(j.at("delta").get<std::string>())};
    } else if (structure == "representative-set") {
        RepresentativeSetStructure rs;
        for (const auto& r : j.at("reps")) rs.reps.push_back(Rational::parse(r.get<std::string>()));
        rs.component = j.value("component", std::vector<int>(rs.reps.size(), 0));
        rs.assignment = j.value("assignment", std::vector<int>{});
        rs.eps = j.value("eps", 0.0);
        p.structure = std::move(rs);
    } else {
        throw std::invalid_argument("policy: unknown structure tag " + structure);
    }
    return p;
}

Policy load_policy(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open policy file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_policy(buf.str());
}

}  // namespace jrp
