#pragma once

#include <string>
#include <vector>

#include "goldilocks/domains.hpp"
#include "goldilocks/dynamics.hpp"

namespace gold {

struct CorpusDomain {
    std::string name;
    DomainSpec domain;
    bool convex = true;
    bool goldilocks_expected = false;
    bool taut_documented = false;
    std::string hypotheses;  // which results the item is documented to satisfy
};

struct CorpusMap {
    std::string name;
    std::string domain;  // corpus domain name
    SelfMap map;
    std::string expected;  // expected orbit behaviour
};

const std::vector<CorpusDomain>& corpus_domains();
const std::vector<CorpusMap>& corpus_maps();
const CorpusDomain& corpus_domain(const std::string& name);
const CorpusMap& corpus_map(const std::string& name);

}  // namespace gold
