#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "goldilocks/dynamics.hpp"
#include "goldilocks/geodesics.hpp"
#include "goldilocks/goldilocks.hpp"
#include "goldilocks/visibility.hpp"

namespace gold {

using Json = nlohmann::ordered_json;

struct SchemaError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

// Complex numbers are [re, im]; points are arrays of those.
Json to_json(Complex z);
Json to_json(const CVec& v);
Complex complex_from_json(const Json& j);
CVec cvec_from_json(const Json& j);

// {"kind": "...", "params": {...}}
Json to_json(const DomainSpec& d);
DomainSpec domain_from_json(const Json& j);

// {"name": ..., "components": [{"numerator": [{"coeff": [re, im], "powers": [...]}], "denominator": [...]}]}
Json to_json(const SelfMap& m);
SelfMap self_map_from_json(const Json& j);

Json to_json(const MetricEstimate& e);
Json to_json(const AlmostGeodesicCertificate& c);
Json to_json(const SmoothingResult& r);
Json to_json(const ShellEstimate& s);
Json to_json(const Condition1Result& r);
Json to_json(const Condition2Result& r);
Json to_json(const PsiThreshold& t);
Json to_json(const ConeReport& r);
Json to_json(const ConeLogBound& b);
Json to_json(const GoldilocksReport& r);
Json to_json(const VisibilityReport& r);
Json to_json(const GromovReport& r);
Json to_json(const OrbitVerdict& v);
Json orbit_summary_json(const OrbitTrace& t);
Json to_json(const MultiStartReport& r);

// CSV tables: 17 significant digits, dot decimal, LF line endings.
void write_path_csv(std::ostream& os, const DomainSpec& domain, const SampledPath& path);
void write_shell_csv(std::ostream& os, const std::vector<ShellEstimate>& table);
void write_condition2_csv(std::ostream& os, const Condition2Result& r);
void write_trace_csv(std::ostream& os, const OrbitTrace& t);
void write_visibility_csv(std::ostream& os, const VisibilityReport& r);
void write_gromov_csv(std::ostream& os, const GromovReport& r);

}  // namespace gold
