#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jrp {

/// Single-commodity EOQ parameters. Both costs must be strictly positive;
/// the holding coefficient already folds in the h*d/2 convention.
struct Commodity {
    double k;  // ordering cost per order
    double h;  // holding coefficient, currency per squared time
};

/// Resource constraints sum_i alpha[d][i] / T_i <= beta[d].
struct Resources {
    std::vector<std::vector<double>> alpha;  // D rows, n columns, entries >= 0
    std::vector<double> beta;                // D capacities, > 0
};

struct Instance {
    double k0 = 0.0;  // joint ordering cost, >= 0
    std::vector<Commodity> commodities;
    std::optional<Resources> resources;

    std::size_t size() const { return commodities.size(); }
    std::size_t constraint_count() const { return resources ? resources->beta.size() : 0; }

    void validate() const;  // throws std::invalid_argument on bad data
};

/// Parses the instance JSON schema:
///   { "k0": number, "commodities": [{"k": number, "h": number}],
///     "resources": {"alpha": [[number]], "beta": [number]} | null }
/// Resource rows with no positive alpha entry are dropped; a message per
/// dropped row is appended to warnings when provided.
Instance parse_instance(const std::string& json_text, std::vector<std::string>* warnings = nullptr);
Instance load_instance(const std::string& path, std::vector<std::string>* warnings = nullptr);
std::string instance_to_json(const Instance& inst);

}  // namespace jrp
