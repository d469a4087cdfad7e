#include "spatent/cooccur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <span>
#include <thread>

namespace spatent {

namespace {
__extension__ using Wide = unsigned __int128;
}  // namespace

std::uint64_t count_categories(const CooccurrenceScheme& scheme) {
  if (scheme.num_categories < 1 || scheme.degree < 1) {
    throw InputError("category count needs I >= 1 and m >= 1");
  }
  constexpr auto kMax = static_cast<Wide>(std::numeric_limits<std::uint64_t>::max());
  const auto categories = static_cast<Wide>(scheme.num_categories);
  Wide count = 1;
  for (int i = 1; i <= scheme.degree; ++i) {
    if (scheme.ordered) {
      count *= categories;
    } else {
      // C(I-1+i, i) = C(I-2+i, i-1) * (I-1+i) / i, exact at every step
      count = count * (categories - 1 + static_cast<unsigned>(i)) / static_cast<unsigned>(i);
    }
    if (count > kMax) throw ArithmeticOverflow("number of Z categories exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(count);
}

Index z_index(Category first, Category second, const CooccurrenceScheme& scheme) {
  const Index n = scheme.num_categories;
  const Index a = first - 1;
  const Index b = second - 1;
  if (scheme.ordered) return a * n + b;
  const Index i = std::min(a, b);
  const Index j = std::max(a, b);
  return i * n - i * (i - 1) / 2 + (j - i);
}

std::vector<std::string> z_labels(const CooccurrenceScheme& scheme) {
  std::vector<std::string> labels;
  const Category n = scheme.num_categories;
  for (Category i = 1; i <= n; ++i) {
    for (Category j = scheme.ordered ? 1 : i; j <= n; ++j) {
      labels.push_back(scheme.ordered
                           ? "(" + std::to_string(i) + "," + std::to_string(j) + ")"
                           : "{" + std::to_string(i) + "," + std::to_string(j) + "}");
    }
  }
  return labels;
}

std::string z_label(Index r, const CooccurrenceScheme& scheme) {
  const Index n = scheme.num_categories;
  if (scheme.ordered) {
    return "(" + std::to_string(r / n + 1) + "," + std::to_string(r % n + 1) + ")";
  }
  Index i = 0;
  while (r >= n - i) {
    r -= n - i;
    ++i;
  }
  return "{" + std::to_string(i + 1) + "," + std::to_string(i + r + 1) + "}";
}

// ---------------------------------------------------------------------------

DistanceClassification::DistanceClassification(std::vector<double> breaks)
    : breaks_(std::move(breaks)) {
  if (breaks_.size() < 2) throw InputError("a distance classification needs at least two breaks");
  if (!(breaks_.front() >= 0.0)) throw InputError("first break must be nonnegative");
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i] > breaks_[i - 1])) throw InputError("breaks must be strictly increasing");
  }
}

DistanceClassification DistanceClassification::standard() {
  return DistanceClassification({0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0, 50.0 * std::sqrt(2.0)});
}

DistanceClassification DistanceClassification::standard_for(const CategoricalGrid& grid) {
  auto breaks = standard().breaks();
  breaks.back() = std::max(breaks.back(), grid.max_pair_distance());
  return DistanceClassification(std::move(breaks));
}

DistanceClassification DistanceClassification::cumulative(double d) {
  if (!(d > 0.0)) throw InputError("cumulative distance must be positive");
  return DistanceClassification({0.0, d});
}

DistanceClassification DistanceClassification::parse(const std::string& text) {
  std::vector<double> breaks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("bad break value '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw InputError("bad break value '" + item + "'");
    }
    breaks.push_back(value);
  }
  return DistanceClassification(std::move(breaks));
}

std::optional<Index> DistanceClassification::band_of(double distance) const noexcept {
  // Breaks such as 50*sqrt(2) or a grid diagonal are themselves rounded, so a
  // distance within a relative 1e-12 of a break counts as lying on it.
  const auto at_most = [](double x, double b) { return x <= b + 1e-12 * std::max(1.0, b); };
  if (at_most(distance, breaks_.front()) || !at_most(distance, breaks_.back())) return std::nullopt;
  for (std::size_t k = 1; k < breaks_.size(); ++k) {
    if (at_most(distance, breaks_[k])) return static_cast<Index>(k) - 1;
  }
  return std::nullopt;
}

std::optional<Index> DistanceClassification::band_of_squared(std::int64_t squared) const noexcept {
  const auto sq = static_cast<double>(squared);
  const auto at_most = [sq](double b) { return sq <= b * b * (1.0 + 2e-12) + 1e-12; };
  if (at_most(breaks_.front()) || !at_most(breaks_.back())) return std::nullopt;
  for (std::size_t k = 1; k < breaks_.size(); ++k) {
    if (at_most(breaks_[k])) return static_cast<Index>(k) - 1;
  }
  return std::nullopt;
}

bool DistanceClassification::covers(const CategoricalGrid& grid) const {
  if (grid.size() < 2) return true;
  // distances are >= 1; the smallest (1) and largest pair must both be inside,
  // and interior distances are inside since bands are contiguous
  const bool has_unit_pair = grid.rows() > 1 || grid.cols() > 1;
  const std::int64_t dr = grid.rows() - 1;
  const std::int64_t dc = grid.cols() - 1;
  return (!has_unit_pair || band_of_squared(1).has_value()) &&
         band_of_squared(dr * dr + dc * dc).has_value();
}

std::string DistanceClassification::label(Index k) const {
  std::ostringstream os;
  os << '(' << lower(k) << ',' << upper(k) << ']';
  return os.str();
}

std::vector<std::string> DistanceClassification::labels() const {
  std::vector<std::string> out;
  for (Index k = 0; k < num_bands(); ++k) out.push_back(label(k));
  return out;
}

DistanceClassification DistanceClassification::merged(Index k) const {
  if (k < 0 || k + 1 >= num_bands()) throw InputError("no band pair to merge at " + std::to_string(k));
  auto breaks = breaks_;
  breaks.erase(breaks.begin() + k + 1);
  return DistanceClassification(std::move(breaks));
}

// ---------------------------------------------------------------------------

PairSample::PairSample(CooccurrenceScheme scheme, DistanceClassification bands, CountMatrix counts)
    : scheme_(scheme), bands_(std::move(bands)), counts_(std::move(counts)) {
  if (counts_.cols() != bands_.num_bands() ||
      static_cast<std::uint64_t>(counts_.rows()) != count_categories(scheme_)) {
    throw InputError("pair counts do not match the scheme and classification");
  }
}

PairSample PairSample::unordered() const {
  if (!scheme_.ordered) return *this;
  CooccurrenceScheme target = scheme_;
  target.ordered = false;
  CountMatrix merged = CountMatrix::Zero(static_cast<Index>(count_categories(target)), num_bands());
  const Category n = scheme_.num_categories;
  for (Category a = 1; a <= n; ++a) {
    for (Category b = 1; b <= n; ++b) {
      merged.row(z_index(a, b, target)) += counts_.row(z_index(a, b, scheme_));
    }
  }
  return PairSample(target, bands_, std::move(merged));
}

PairSample PairSample::merged_bands(Index k) const {
  auto bands = bands_.merged(k);
  CountMatrix merged(counts_.rows(), counts_.cols() - 1);
  merged.leftCols(k) = counts_.leftCols(k);
  merged.col(k) = counts_.col(k) + counts_.col(k + 1);
  merged.rightCols(counts_.cols() - k - 2) = counts_.rightCols(counts_.cols() - k - 2);
  return PairSample(scheme_, std::move(bands), std::move(merged));
}

void PairSample::write_csv(std::ostream& out) const {
  out << "band,z_category,count\n";
  const auto band_labels = bands_.labels();
  const auto labels = z_labels(scheme_);
  for (Index k = 0; k < counts_.cols(); ++k) {
    for (Index r = 0; r < counts_.rows(); ++r) {
      if (counts_(r, k) == 0) continue;
      out << '"' << band_labels[static_cast<std::size_t>(k)] << "\",\""
          << labels[static_cast<std::size_t>(r)] << "\"," << counts_(r, k) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

struct Displacement {
  Index dr;
  Index dc;
  Index band;
};

// Every displacement (dr, dc) from a pixel to one that follows it in
// row-major order, i.e. dr > 0, or dr == 0 and dc > 0.
std::vector<Displacement> forward_displacements(const CategoricalGrid& grid,
                                                const DistanceClassification& bands) {
  std::vector<Displacement> out;
  for (Index dr = 0; dr < grid.rows(); ++dr) {
    for (Index dc = dr == 0 ? 1 : -(grid.cols() - 1); dc < grid.cols(); ++dc) {
      const auto band = bands.band_of_squared(dr * dr + dc * dc);
      if (!band) {
        throw CoverageError("pair distance " + std::to_string(std::hypot(dr, dc)) +
                            " is outside every distance band");
      }
      out.push_back({dr, dc, *band});
    }
  }
  return out;
}

// Flat ordered tally: index (band * I + a) * I + b for categories a, b (0-based).
void tally_displacements(const CategoricalGrid& grid, std::span<const Displacement> work,
                         std::vector<std::int64_t>& tally) {
  const Index n = grid.num_categories();
  const Index cols = grid.cols();
  const auto& x = grid.values();
  for (const auto& d : work) {
    const Index c_begin = std::max<Index>(0, -d.dc);
    const Index c_end = std::min(cols, cols - d.dc);
    std::int64_t* band_tally = tally.data() + d.band * n * n;
    for (Index r = 0; r + d.dr < grid.rows(); ++r) {
      const Category* from = x.data() + r * cols;
      const Category* to = x.data() + (r + d.dr) * cols + d.dc;
      for (Index c = c_begin; c < c_end; ++c) {
        ++band_tally[(from[c] - 1) * n + (to[c] - 1)];
      }
    }
  }
}

}  // namespace

PairSample enumerate_pairs(const CategoricalGrid& grid, const DistanceClassification& bands,
                           const CooccurrenceScheme& scheme, unsigned threads) {
  if (scheme.degree != 2) {
    throw UnsupportedDegree("pair enumeration supports degree 2 only, got " +
                            std::to_string(scheme.degree));
  }
  if (scheme.num_categories != grid.num_categories()) {
    throw InputError("scheme and grid disagree on the number of categories");
  }
  const auto displacements = forward_displacements(grid, bands);
  const Index n = grid.num_categories();
  const auto cells = static_cast<std::size_t>(bands.num_bands() * n * n);

  std::vector<std::int64_t> tally(cells, 0);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(displacements.size())));
  if (threads == 1) {
    tally_displacements(grid, displacements, tally);
  } else {
    // strided split keeps the heavy short displacements spread across workers
    std::vector<std::vector<Displacement>> shards(threads);
    for (std::size_t i = 0; i < displacements.size(); ++i) shards[i % threads].push_back(displacements[i]);
    std::vector<std::vector<std::int64_t>> partial(threads, std::vector<std::int64_t>(cells, 0));
    {
      std::vector<std::jthread> workers;
      for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] { tally_displacements(grid, shards[t], partial[t]); });
      }
    }
    for (const auto& p : partial)
      for (std::size_t i = 0; i < cells; ++i) tally[i] += p[i];
  }

  CountMatrix counts = CountMatrix::Zero(static_cast<Index>(count_categories(scheme)), bands.num_bands());
  for (Index k = 0; k < bands.num_bands(); ++k) {
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        const auto c = tally[static_cast<std::size_t>((k * n + a) * n + b)];
        if (c) counts(z_index(static_cast<Category>(a + 1), static_cast<Category>(b + 1), scheme), k) += c;
      }
    }
  }
  return PairSample(scheme, bands, std::move(counts));
}

// ---------------------------------------------------------------------------

Pmf CooccurrenceEstimate::conditional(Index k) const {
  if (empty_band[static_cast<std::size_t>(k)]) {
    throw InvalidDistribution("band " + std::to_string(k + 1) + " holds no pairs");
  }
  return Pmf(p_z.labels(), conditionals.col(k));
}

CooccurrenceEstimate conditional_pmfs(const PairSample& sample) {
  const std::int64_t total = sample.total();
  if (total <= 0) throw InputError("no pixel pairs to estimate from (grid needs N >= 2)");
  const CountVector q = sample.band_totals();
  const auto labels = z_labels(sample.scheme());
  const auto band_labels = sample.bands().labels();

  const Eigen::MatrixXd counts = sample.counts().cast<double>();
  Eigen::MatrixXd conditionals = Eigen::MatrixXd::Zero(counts.rows(), counts.cols());
  std::vector<bool> empty(static_cast<std::size_t>(counts.cols()), false);
  for (Index k = 0; k < counts.cols(); ++k) {
    if (q(k) == 0) {
      empty[static_cast<std::size_t>(k)] = true;
      continue;
    }
    conditionals.col(k) = counts.col(k) / static_cast<double>(q(k));
  }
  Eigen::VectorXd p_w = q.cast<double>() / static_cast<double>(total);
  Eigen::VectorXd p_z = sample.pooled().cast<double>() / static_cast<double>(total);
  JointPmf joint(labels, band_labels, counts / static_cast<double>(total));
  return CooccurrenceEstimate{Pmf(band_labels, std::move(p_w)), std::move(conditionals),
                              std::move(empty), Pmf(labels, std::move(p_z)), std::move(joint)};
}

}  // namespace spatent
