#include "autonarm/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "autonarm/error.hpp"
#include "autonarm/rng.hpp"

namespace autonarm {

namespace {

std::vector<double> copy_cells(const TransactionDatabase& db) {
  auto cells = db.cells();
  return {cells.begin(), cells.end()};
}

std::vector<Attribute> copy_attributes(const TransactionDatabase& db) {
  auto attrs = db.attributes();
  return {attrs.begin(), attrs.end()};
}

// Mean that is exact when all values are equal.
double stable_mean(std::span<const double> values) {
  const double first = values.front();
  double acc = 0.0;
  for (double v : values) acc += v - first;
  return first + acc / static_cast<double>(values.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = stable_mean(a);
  const double mb = stable_mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

std::string_view to_string(PreprocessKind kind) {
  switch (kind) {
    case PreprocessKind::MinMax: return "MM";
    case PreprocessKind::ZScore: return "ZS";
    case PreprocessKind::Squash: return "DS";
    case PreprocessKind::RemoveCorrelated: return "RHC";
    case PreprocessKind::KMeansDiscretize: return "DK";
  }
  return "?";
}

std::optional<PreprocessKind> parse_preprocess(std::string_view label) {
  for (auto kind : kPreprocessPool) {
    if (to_string(kind) == label) return kind;
  }
  return std::nullopt;
}

TransactionDatabase min_max(const TransactionDatabase& db) {
  auto cells = copy_cells(db);
  auto attrs = copy_attributes(db);
  const std::size_t width = db.n_attributes();
  for (std::size_t j = 0; j < width; ++j) {
    Attribute& a = attrs[j];
    if (!a.is_numeric()) continue;
    const double range = a.max - a.min;
    for (std::size_t i = j; i < cells.size(); i += width) {
      cells[i] = range > 0.0 ? std::clamp((cells[i] - a.min) / range, 0.0, 1.0) : 0.0;
    }
    // the declared domain maps onto [0, 1], which keeps a second pass the identity
    a.min = 0.0;
    a.max = 1.0;
  }
  return TransactionDatabase(std::move(attrs), std::move(cells));
}

TransactionDatabase z_score(const TransactionDatabase& db) {
  auto cells = copy_cells(db);
  const std::size_t width = db.n_attributes();
  for (std::size_t j = 0; j < width; ++j) {
    if (!db.attribute(j).is_numeric()) continue;
    const auto col = db.column(j);
    const double mean = stable_mean(col);
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sigma = std::sqrt(ss / static_cast<double>(col.size()));
    for (std::size_t i = j; i < cells.size(); i += width) {
      cells[i] = sigma > 0.0 ? (cells[i] - mean) / sigma : 0.0;
    }
  }
  return TransactionDatabase::with_recomputed_domains(copy_attributes(db), std::move(cells));
}

TransactionDatabase squash(const TransactionDatabase& db, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw InvalidArgument("squash ratio must lie in (0, 1]");
  const std::size_t n = db.n_transactions();
  const auto k = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));
  if (k >= n) return db;

  // Feature matrix: min-max normalized numeric attributes.
  std::vector<std::size_t> numeric;
  for (std::size_t j = 0; j < db.n_attributes(); ++j) {
    if (db.attribute(j).is_numeric()) numeric.push_back(j);
  }
  const std::size_t dim = numeric.size();
  std::vector<double> features(n * dim);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t f = 0; f < dim; ++f) {
      const Attribute& a = db.attribute(numeric[f]);
      const double range = a.max - a.min;
      features[r * dim + f] = range > 0.0 ? (db.value(r, numeric[f]) - a.min) / range : 0.0;
    }
  }
  auto point = [&](std::size_t r) { return std::span<const double>(features.data() + r * dim, dim); };

  // k-means++ seeding.
  Rng rng(seed);
  std::vector<double> centers;
  centers.reserve(k * dim);
  auto add_center = [&](std::size_t r) {
    auto p = point(r);
    centers.insert(centers.end(), p.begin(), p.end());
  };
  auto center = [&](std::size_t c) { return std::span<const double>(centers.data() + c * dim, dim); };
  add_center(rng.index(n));
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      nearest[r] = std::min(nearest[r], squared_distance(point(r), center(c - 1)));
      total += nearest[r];
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (std::size_t r = 0; r < n; ++r) {
        target -= nearest[r];
        if (target < 0.0) {
          pick = r;
          break;
        }
      }
    } else {
      pick = rng.index(n);
    }
    add_center(pick);
  }

  std::vector<std::size_t> assignment(n, 0);
  auto recompute = [&](std::size_t c) {
    std::vector<double> sum(dim, 0.0);
    std::size_t count = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (assignment[r] != c) continue;
      ++count;
      for (std::size_t f = 0; f < dim; ++f) sum[f] += features[r * dim + f];
    }
    if (count == 0) return;
    for (std::size_t f = 0; f < dim; ++f) centers[c * dim + f] = sum[f] / static_cast<double>(count);
  };

  for (std::size_t iteration = 0; iteration < 100; ++iteration) {
    bool changed = iteration == 0;
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t best = 0;
      double best_d = squared_distance(point(r), center(0));
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_distance(point(r), center(c));
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assignment[r] != best) {
        assignment[r] = best;
        changed = true;
      }
    }
    if (!changed) break;
    for (std::size_t c = 0; c < k; ++c) recompute(c);
  }

  // Every cluster must own at least one row so exactly k representatives come out.
  std::vector<std::size_t> sizes(k, 0);
  for (auto c : assignment) ++sizes[c];
  for (std::size_t empty = 0; empty < k; ++empty) {
    if (sizes[empty] != 0) continue;
    const auto donor = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::size_t farthest = n;
    double farthest_d = -1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (assignment[r] != donor) continue;
      const double d = squared_distance(point(r), center(donor));
      if (d > farthest_d) {
        farthest_d = d;
        farthest = r;
      }
    }
    assignment[farthest] = empty;
    --sizes[donor];
    ++sizes[empty];
    recompute(donor);
    recompute(empty);
  }

  // Clusters are emitted in order of their first member row.
  std::vector<std::size_t> order;
  std::vector<bool> emitted(k, false);
  for (std::size_t r = 0; r < n; ++r) {
    if (!emitted[assignment[r]]) {
      emitted[assignment[r]] = true;
      order.push_back(assignment[r]);
    }
  }

  const std::size_t width = db.n_attributes();
  std::vector<double> cells;
  cells.reserve(k * width);
  std::vector<double> members;
  for (auto c : order) {
    for (std::size_t j = 0; j < width; ++j) {
      members.clear();
      for (std::size_t r = 0; r < n; ++r) {
        if (assignment[r] == c) members.push_back(db.value(r, j));
      }
      const Attribute& a = db.attribute(j);
      if (a.is_numeric()) {
        cells.push_back(std::clamp(stable_mean(members), a.min, a.max));
      } else {
        std::vector<std::size_t> counts(a.categories.size(), 0);
        for (double v : members) ++counts[static_cast<std::size_t>(v)];
        cells.push_back(static_cast<double>(std::max_element(counts.begin(), counts.end()) - counts.begin()));
      }
    }
  }
  return TransactionDatabase::with_recomputed_domains(copy_attributes(db), std::move(cells));
}

TransactionDatabase remove_highly_correlated(const TransactionDatabase& db, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidArgument("correlation threshold must lie in (0, 1]");
  const std::size_t width = db.n_attributes();
  std::vector<bool> keep(width, true);
  std::vector<std::vector<double>> columns(width);
  for (std::size_t j = 0; j < width; ++j) {
    if (db.attribute(j).is_numeric()) columns[j] = db.column(j);
  }
  for (std::size_t j = 0; j < width; ++j) {
    if (!db.attribute(j).is_numeric()) continue;
    for (std::size_t i = 0; i < j; ++i) {
      if (!keep[i] || !db.attribute(i).is_numeric()) continue;
      if (std::abs(pearson(columns[i], columns[j])) >= threshold) {
        keep[j] = false;
        break;
      }
    }
  }
  if (std::all_of(keep.begin(), keep.end(), [](bool k) { return k; })) return db;

  std::vector<Attribute> attrs;
  for (std::size_t j = 0; j < width; ++j) {
    if (keep[j]) attrs.push_back(db.attribute(j));
  }
  std::vector<double> cells;
  cells.reserve(db.n_transactions() * attrs.size());
  for (std::size_t r = 0; r < db.n_transactions(); ++r) {
    for (std::size_t j = 0; j < width; ++j) {
      if (keep[j]) cells.push_back(db.value(r, j));
    }
  }
  return TransactionDatabase(std::move(attrs), std::move(cells));
}

std::vector<double> kmeans_1d(const std::vector<double>& values, std::size_t k, std::size_t max_iterations) {
  std::vector<double> distinct(values);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const std::size_t clusters = std::min(k, distinct.size());
  if (clusters == distinct.size()) return values;

  std::vector<double> centers(clusters);
  for (std::size_t c = 0; c < clusters; ++c) {
    const auto pos = static_cast<std::size_t>((static_cast<double>(c) + 0.5) * static_cast<double>(distinct.size()) /
                                              static_cast<double>(clusters));
    centers[c] = distinct[std::min(pos, distinct.size() - 1)];
  }

  auto nearest = [&](double v) {
    std::size_t best = 0;
    double best_d = std::abs(v - centers[0]);
    for (std::size_t c = 1; c < clusters; ++c) {
      const double d = std::abs(v - centers[c]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    return best;
  };

  std::vector<std::size_t> assignment(values.size(), clusters);
  for (std::size_t iteration = 0; iteration < max_iterations; ++iteration) {
    bool changed = false;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto c = nearest(values[i]);
      if (c != assignment[i]) {
        assignment[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<double> sum(clusters, 0.0);
    std::vector<std::size_t> count(clusters, 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
      sum[assignment[i]] += values[i];
      ++count[assignment[i]];
    }
    for (std::size_t c = 0; c < clusters; ++c) {
      if (count[c] > 0) centers[c] = sum[c] / static_cast<double>(count[c]);
    }
  }

  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = centers[assignment[i]];
  return out;
}

TransactionDatabase kmeans_discretize(const TransactionDatabase& db, std::size_t k) {
  if (k < 2) throw InvalidArgument("k-means discretization needs k >= 2");
  auto cells = copy_cells(db);
  const std::size_t width = db.n_attributes();
  for (std::size_t j = 0; j < width; ++j) {
    if (!db.attribute(j).is_numeric()) continue;
    const auto replaced = kmeans_1d(db.column(j), k);
    for (std::size_t r = 0; r < replaced.size(); ++r) cells[r * width + j] = replaced[r];
  }
  return TransactionDatabase::with_recomputed_domains(copy_attributes(db), std::move(cells));
}

TransactionDatabase apply_chain(const TransactionDatabase& db, const std::vector<PreprocessKind>& methods,
                                std::uint64_t seed, const PreprocessParams& params) {
  TransactionDatabase out = db;
  for (auto kind : kPreprocessPool) {
    if (std::find(methods.begin(), methods.end(), kind) == methods.end()) continue;
    switch (kind) {
      case PreprocessKind::MinMax: out = min_max(out); break;
      case PreprocessKind::ZScore: out = z_score(out); break;
      case PreprocessKind::Squash: out = squash(out, params.squash_ratio, derive_seed(seed, 2)); break;
      case PreprocessKind::RemoveCorrelated: out = remove_highly_correlated(out, params.correlation_threshold); break;
      case PreprocessKind::KMeansDiscretize: out = kmeans_discretize(out, params.discretize_k); break;
    }
  }
  return out;
}

}  // namespace autonarm
