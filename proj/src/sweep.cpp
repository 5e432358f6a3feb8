#include "binnms/sweep.hpp"

#include <charconv>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "binnms/metrics.hpp"
#include "binnms/parallel.hpp"

namespace binnms {

namespace {

const SweepCell* best_by(const std::vector<SweepCell>& cells, auto primary, auto secondary) {
  const SweepCell* best = nullptr;
  for (const auto& c : cells) {
    if (!c.ok() || !(c.*primary)) continue;
    if (best == nullptr || *(c.*primary) > *(best->*primary) ||
        (*(c.*primary) == *(best->*primary) && *(c.*secondary) > *(best->*secondary))) {
      best = &c;
    }
  }
  return best;
}

std::size_t parse_count(const std::string& s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end) {
    throw std::invalid_argument("bad grid value '" + s + "'");
  }
  return v;
}

}  // namespace

const SweepCell* SweepReport::best_by_nmi() const {
  return best_by(cells, &SweepCell::nmi, &SweepCell::arand);
}

const SweepCell* SweepReport::best_by_arand() const {
  return best_by(cells, &SweepCell::arand, &SweepCell::nmi);
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    if (const auto dots = part.find(".."); dots != std::string::npos) {
      const std::size_t lo = parse_count(part.substr(0, dots));
      const std::size_t hi = parse_count(part.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("empty grid range '" + part + "'");
      for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_count(part));
    }
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

SweepReport run_sweep(const Dataset& data, const SweepConfig& cfg) {
  if (cfg.k1_values.empty() || cfg.k2_values.empty()) {
    throw std::invalid_argument("sweep grids must be nonempty");
  }
  const auto& truth = data.truth_labels();
  SweepReport report;
  report.cells.resize(cfg.k1_values.size() * cfg.k2_values.size());

  for (std::size_t a = 0; a < cfg.k1_values.size(); ++a) {
    const std::size_t k1 = cfg.k1_values[a];
    std::vector<AscentTrajectory> trajectories;
    std::vector<BinaryVector> ends;
    std::string ascent_error;
    try {
      if (k1 == 0) {
        ends.assign(data.points().begin(), data.points().end());
      } else {
        trajectories = ascend_all(data, data.points(), BgaConfig{k1, cfg.j_max}, cfg.threads);
        ends = endpoints(trajectories);
      }
    } catch (const std::exception& e) {
      ascent_error = e.what();
    }

    if (k1 > 0) {
      SweepTrajectory st;
      st.k1 = k1;
      if (!ascent_error.empty()) {
        st.error = ascent_error;
      } else if (truth) {
        st.errors = quantization_trajectory(data.points(), trajectories, *truth);
      }
      if (truth || !st.error.empty()) report.trajectories.push_back(std::move(st));
    }

    parallel_for(cfg.k2_values.size(), cfg.threads, [&](std::size_t b) {
      SweepCell& cell = report.cells[a * cfg.k2_values.size() + b];
      cell.k1 = k1;
      cell.k2 = cfg.k2_values[b];
      if (!ascent_error.empty()) {
        cell.error = ascent_error;
        return;
      }
      try {
        const double eps = compute_epsilon(ends, cell.k2, cfg.epsilon_mode);
        const ClusterLabeling lab = label_clusters(ends, eps);
        cell.epsilon = eps;
        cell.num_clusters = lab.num_clusters;
        cell.quant_error = quantization_error(data, lab);
        if (truth) {
          cell.nmi = nmi(*truth, lab.labels);
          cell.arand = arand(*truth, lab.labels);
        }
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    });
  }
  return report;
}

}  // namespace binnms
