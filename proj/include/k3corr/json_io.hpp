#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3corr/criteria.hpp"
#include "k3corr/lattice.hpp"
#include "k3corr/mukai.hpp"

namespace k3corr {

// All CLI-visible integers are serialized as decimal strings so consumers
// never face 64-bit overflow; rationals as "p/q" with q > 0.
using Json = nlohmann::ordered_json;

std::string dec(const Int& v);
Json int_vec_json(const std::vector<Int>& v);
Json rat_vec_json(const std::vector<Rat>& v);

Json chain_json(const IsomorphismChain& chain);
Json invariant_report_json(const InvariantReport& rep);
Json period_json(const PeriodData& p);
Json necessity_json(const MukaiType& t, const NecessityReport& rep);
Json series_decision_json(const Rank2Input& input,
                          const SeriesDecision& decision);
Json critical_search_json(const MukaiType& t, const Int& gamma,
                          const Int& k_max, const Int& t_max,
                          const std::vector<CriticalHit>& hits);
Json certificate_json(const CriticalityCertificate& cert);
Json lattice_disc_json(const GramLattice& lattice);
Json reduction_json(const MukaiVector& input, const Rank1Reduction& red);

// { "gram": [[int, ...], ...], "labels": ["H", ...] }; entries may also be
// decimal strings.
GramLattice load_gram_file(const std::string& path);
GramLattice parse_gram_json(const Json& j);

enum class OutputMode { json, text };
// json: stable two-space dump; text: indented "key: value" lines.
void write_output(const Json& j, OutputMode mode, std::ostream& os);

}  // namespace k3corr
