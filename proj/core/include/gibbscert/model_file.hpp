#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gibbscert/spin_model.hpp"

namespace gibbscert {

/// Malformed model file; the message carries "source:line: ".
class ParseError : public ModelError {
public:
    using ModelError::ModelError;
};

struct EdgeValue {
    std::string from;
    std::string to;
    double value = 0.0;
    int line = 0;
};

struct PotentialEntry {
    std::string a;
    std::string b;
    std::vector<double> table;
    int line = 0;
};

/// Parsed but not yet validated contents of a model file.
struct ModelSpec {
    std::string source;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::string> alphabet;
    std::vector<double> ref_weights;
    std::vector<double> h_values;
    std::optional<double> coupling;
    std::vector<PotentialEntry> potentials;
    bool kappa_auto = true;
    double kappa_default = 0.0;
    std::vector<EdgeValue> kappa_overrides;
    double c_default = 0.0;
    std::vector<EdgeValue> c_overrides;
    std::optional<double> K;
    std::optional<int> chi;
    std::optional<double> mu_h;
    Tolerances tol;
    std::size_t cap = kDefaultCap;
};

ModelSpec parse_model_spec(std::istream& in, const std::string& source);
ModelSpec read_model_file(const std::string& path);

struct LoadedModel {
    ModelSpec spec;
    Graph graph;
    FiniteSpinModel model;
    ColorPartition partition;
    ContractionParams params;
    double K = 0.0;
    double mu_h = 0.0;
    std::string mu_h_source;  // "override", "exact" or "max h"
};

/// Builds the graph, model, partition and criterion inputs. A K override
/// replaces the file's K before kappa = auto is evaluated.
LoadedModel load_model(const ModelSpec& spec, std::optional<double> K_override = std::nullopt);

}  // namespace gibbscert
