#pragma once

#include <vector>

#include "braidlat/blowup.hpp"
#include "braidlat/circular.hpp"
#include "braidlat/classifier.hpp"
#include "braidlat/embedding.hpp"
#include "braidlat/lattice.hpp"
#include "json.hpp"

namespace braidlat {

using Json = nlohmann::ordered_json;

// Integers beyond ±(2^53 - 1) are written as decimal strings.
Json big_to_json(const BigInt& v);

Json to_json(const NormalForm3& nf);
Json to_json(const BlowupChain& chain);
Json to_json(const Family3Symmetry& sym);
Json to_json(const AmphichiralityWitness& w);
Json to_json(const Verdict& v);
Json to_json(const BatchEntry& e);
Json to_json(const IntMatrix& m);
Json to_json(const EmbeddingCertificate& cert);
Json to_json(const EmbeddingResult& r);
Json to_json(const std::vector<TraceMove>& trace);

Json moves_to_json(const std::vector<ExpansionMove>& moves);

}  // namespace braidlat
