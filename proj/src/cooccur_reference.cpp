#include "spatent/cooccur.hpp"

namespace spatent {

PairSample enumerate_pairs_reference(const CategoricalGrid& grid,
                                     const DistanceClassification& bands,
                                     const CooccurrenceScheme& scheme) {
  if (scheme.degree != 2) throw UnsupportedDegree("reference enumeration supports degree 2 only");
  CountMatrix counts =
      CountMatrix::Zero(static_cast<Index>(count_categories(scheme)), bands.num_bands());
  for (Index u = 0; u < grid.size(); ++u) {
    for (Index v = u + 1; v < grid.size(); ++v) {
      const auto band = bands.band_of(pixel_distance(u, v, grid));
      if (!band) throw CoverageError("pair distance outside every distance band");
      ++counts(z_index(grid.at(u), grid.at(v), scheme), *band);
    }
  }
  return PairSample(scheme, bands, std::move(counts));
}

}  // namespace spatent
