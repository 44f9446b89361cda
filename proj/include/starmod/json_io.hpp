#pragma once

#include <json.hpp>

#include "starmod/bundle.hpp"
#include "starmod/picard.hpp"
#include "starmod/trace.hpp"

namespace starmod {

using Json = nlohmann::ordered_json;

// scalars
Json to_json(const GaussianRational& c);
GaussianRational gaussian_from_json(const Json& j);

// algebra layer
Json to_json(const AlgebraDescriptor& desc);
DescriptorPtr descriptor_from_json(const Json& j);
Json to_json(const AlgebraElement& e);
AlgebraElement element_from_json(const Json& j, const DescriptorPtr& desc);

// series / matrices
Json to_json(const FormalSeries& f);
FormalSeries series_from_json(const Json& j, const DescriptorPtr& desc);
Json to_json(const ScalarSeries& s);
Json to_json(const StarMatrix& m);
StarMatrix star_matrix_from_json(const Json& j, const StarProductPtr& star);

// transforms and automorphisms
Json to_json(const EquivalenceTransform& t);
EquivalenceTransform transform_from_json(const Json& j, const DescriptorPtr& desc, int K);
Json to_json(const Automorphism& a);
Automorphism automorphism_from_json(const Json& j);

// projections and cocycles
Json projection_to_json(const ClassicalProjection& p);
ClassicalProjection projection_from_json(const Json& j, const DescriptorPtr& desc);
Json to_json(const CocycleData& c);
CocycleData cocycle_from_json(const Json& j, const StarProductPtr& star);

// reports
Json to_json(const StarAxiomReport& r);
Json to_json(const CocycleReport& r);
Json to_json(const FullnessReport& r);
Json to_json(const IndexInvarianceReport& r);

// picard layer
Json to_json(const CohomologyModel& m);
CohomologyModel model_from_json(const Json& j);
Json to_json(const CharacteristicClass& c);
CharacteristicClass class_from_json(const Json& j);
Json to_json(const MoritaReport& r);
Json to_json(const OutEquivElement& e);
OutEquivElement outequiv_from_json(const Json& j);
Json to_json(const KernelDescription& d);

Json load_json_file(const std::string& path);

} // namespace starmod
