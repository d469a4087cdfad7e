#include "spatent/decomp.hpp"

#include <cmath>
#include <sstream>

namespace spatent {

double partial_residual(const Pmf& z_given_band) { return shannon(z_given_band); }

double global_residual(const Pmf& p_w, const Eigen::MatrixXd& conditionals) {
  if (conditionals.cols() != p_w.size()) throw InputError("one conditional column per band expected");
  double sum = 0.0;
  for (Index k = 0; k < p_w.size(); ++k) {
    if (p_w[k] > 0.0) sum += p_w[k] * entropy_of(conditionals.col(k));
  }
  return sum;
}

double spatial_mutual_information(const JointPmf& joint) {
  const double via_divergence = mutual_information(joint);
  const double via_residual =
      shannon(joint.row_margin()) - conditional_entropy(joint, Margin::Cols).value;
  if (std::abs(via_divergence - via_residual) > kIdentityTolerance) {
    std::ostringstream os;
    os << "mutual information routes disagree: " << via_divergence << " vs " << via_residual;
    throw ConsistencyError(os.str());
  }
  return via_divergence;
}

double partial_information(const Pmf& z_given_band, const Pmf& p_z) {
  try {
    return kl_divergence(z_given_band, p_z);
  } catch (const AbsoluteContinuityError& e) {
    throw ConsistencyError(std::string("band support exceeds the pooled support: ") + e.what());
  }
}

Flagged<double> proportional_mi(const EntropyDecomposition& d) {
  if (d.marginal <= 0.0) return {0.0, true};
  return {d.mutual_information / d.marginal, false};
}

EntropyDecomposition decompose(const CooccurrenceEstimate& estimate) {
  EntropyDecomposition out;
  out.marginal = shannon(estimate.p_z);
  out.residual_global = global_residual(estimate.p_w, estimate.conditionals);
  out.mutual_information = spatial_mutual_information(estimate.joint);

  const double double_sum = conditional_entropy(estimate.joint, Margin::Cols).value;
  if (std::abs(double_sum - out.residual_global) > kIdentityTolerance) {
    throw ConsistencyError("global residual differs from its joint-table form");
  }

  const auto& labels = estimate.p_w.labels();
  for (Index k = 0; k < estimate.p_w.size(); ++k) {
    BandTerms band;
    band.label = labels[static_cast<std::size_t>(k)];
    band.empty = estimate.empty_band[static_cast<std::size_t>(k)];
    if (!band.empty) {
      const Pmf z_given_band = estimate.conditional(k);
      band.p_w = estimate.p_w[k];
      band.residual_partial = partial_residual(z_given_band);
      band.info_partial = partial_information(z_given_band, estimate.p_z);
    }
    out.bands.push_back(std::move(band));
  }

  const auto prop = proportional_mi(out);
  out.mi_proportional = prop.value;
  out.mi_proportional_flagged = prop.flagged;
  return out;
}

EntropyDecomposition decompose(const PairSample& sample) {
  if (sample.scheme().ordered) {
    throw InputError("the entropy decomposition is defined on unordered pairs");
  }
  return decompose(conditional_pmfs(sample));
}

EntropyDecomposition decompose(const CategoricalGrid& grid, const DistanceClassification& bands,
                               unsigned threads) {
  if (grid.size() < 2) throw InputError("decomposition needs at least two pixels");
  return decompose(enumerate_pairs(grid, bands, {grid.num_categories(), false}, threads));
}

nlohmann::json to_json(const EntropyDecomposition& d) {
  nlohmann::json bands = nlohmann::json::array();
  for (const auto& b : d.bands) {
    bands.push_back({{"label", b.label},
                     {"p_w", b.p_w},
                     {"residual_partial", b.residual_partial},
                     {"info_partial", b.info_partial},
                     {"empty", b.empty}});
  }
  return {{"marginal", d.marginal},
          {"residual_global", d.residual_global},
          {"mutual_information", d.mutual_information},
          {"mi_proportional", d.mi_proportional},
          {"mi_proportional_flagged", d.mi_proportional_flagged},
          {"bands", std::move(bands)}};
}

std::string csv_header(Index num_bands) {
  std::ostringstream os;
  os << "marginal,residual_global,mutual_information,mi_proportional";
  for (Index k = 1; k <= num_bands; ++k) {
    os << ",p_w_" << k << ",residual_partial_" << k << ",info_partial_" << k;
  }
  return os.str();
}

std::string csv_row(const EntropyDecomposition& d) {
  std::ostringstream os;
  os.precision(17);
  os << d.marginal << ',' << d.residual_global << ',' << d.mutual_information << ','
     << d.mi_proportional;
  for (const auto& b : d.bands) os << ',' << b.p_w << ',' << b.residual_partial << ',' << b.info_partial;
  return os.str();
}

}  // namespace spatent
