#pragma once

#include "proxpair/bpp.hpp"
#include "proxpair/error.hpp"
#include "proxpair/metrics.hpp"
#include "proxpair/structure.hpp"

#include <json.hpp>

#include <string>

namespace proxpair::io {

/// Key order is preserved, so dumps are reproducible byte for byte.
using Json = nlohmann::ordered_json;

/// Malformed input; `field` is a dotted path such as "bodies.A.ball.r".
class SpecError : public InvalidArgument {
 public:
  SpecError(std::string field, const std::string& message)
      : InvalidArgument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

Json to_json(const Vector& v);
Json to_json(const Points& pts);  ///< list of points
Json to_json(const NormSpec& norm);
Json to_json(const ConvexBody& body);
Json to_json(const AffineMap& map);
Json to_json(const CyclicMapSpec& map);

Vector vector_from_json(const Json& j, const std::string& field, long dim = -1);
NormSpec norm_from_json(const Json& j, const std::string& field);
ConvexBody body_from_json(const Json& j, int dim, const std::string& field);
CyclicMapSpec map_from_json(const Json& j, int dim, const std::string& field);

Json to_json(const Certificate& c);
Json to_json(const ConvexityVerdict& v);
Json to_json(const ProximalCore& core);
Json to_json(const MateWitness& w);
Json to_json(const SemisharpVerdict& v);
Json to_json(const PairMetrics& m);
Json to_json(const StructureEstimate& e);
Json to_json(const ShrinkTrace& t);
Json to_json(const NonexpansiveCertificate& c);
Json to_json(const BppResult& r);

}  // namespace proxpair::io
