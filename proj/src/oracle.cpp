#include "qgm2/oracle.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace qgm2 {

namespace {

constexpr double TWO_PI = 2.0 * std::numbers::pi;

struct Objective {
  MatrixX p1;
  MatrixX p2;
  bool tracial;
  long* counter;

  double operator()(const Eigen::MatrixXd& r) const {
    ++*counter;
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    if (tracial) m.block<3, 3>(1, 1) = r;
    else m.block<2, 2>(1, 1) = r;
    const MatrixX mc = m.cast<cplx>();
    return (mc * p1 * mc.transpose() - p2).norm();
  }
};

double golden_section(const std::function<double(double)>& f, double a, double b, int iters, double& xmin) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-15; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  xmin = fc <= fd ? c : d;
  return std::min(fc, fd);
}

SearchReport search_so2(const Objective& obj, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double shift = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double step = TWO_PI / GRID_N;
  std::vector<double> vals(GRID_N);
  for (int j = 0; j < GRID_N; ++j) vals[j] = obj(rotation2((j + shift) * step));

  std::vector<int> minima;
  for (int j = 0; j < GRID_N; ++j) {
    const double l = vals[(j + GRID_N - 1) % GRID_N], r = vals[(j + 1) % GRID_N];
    if (vals[j] <= l && vals[j] <= r) minima.push_back(j);
  }
  std::stable_sort(minima.begin(), minima.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  if (minima.size() > static_cast<std::size_t>(REFINE_SEEDS)) minima.resize(REFINE_SEEDS);

  SearchReport rep;
  rep.min_distance = std::numeric_limits<double>::infinity();
  const auto f = [&](double t) { return obj(rotation2(t)); };
  for (int j : minima) {
    const double centre = (j + shift) * step;
    double t = centre;
    const double d = golden_section(f, centre - step, centre + step, 200, t);
    if (d < rep.min_distance) {
      rep.min_distance = d;
      rep.best_rotation = rotation2(t);
    }
  }
  rep.converged = true;
  return rep;
}

Eigen::Matrix3d exp_so3(const Eigen::Vector3d& w) {
  const double angle = w.norm();
  if (angle == 0.0) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
}

struct NelderMeadResult {
  Eigen::Vector3d x;
  double f;
  bool converged;
};

NelderMeadResult nelder_mead(const std::function<double(const Eigen::Vector3d&)>& f, const Eigen::Vector3d& x0,
                             double size, int max_iter) {
  std::array<Eigen::Vector3d, 4> pts;
  std::array<double, 4> fv;
  pts[0] = x0;
  for (int i = 0; i < 3; ++i) {
    pts[i + 1] = x0;
    pts[i + 1](i) += size;
  }
  for (int i = 0; i < 4; ++i) fv[i] = f(pts[i]);

  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::array<Eigen::Vector3d, 4> sp;
    std::array<double, 4> sf;
    for (int i = 0; i < 4; ++i) {
      sp[i] = pts[idx[i]];
      sf[i] = fv[idx[i]];
    }
    pts = sp;
    fv = sf;

    double diam = 0.0;
    for (int i = 1; i < 4; ++i) diam = std::max(diam, (pts[i] - pts[0]).norm());
    if (diam < 1e-13 || fv[3] - fv[0] <= 1e-32) {
      converged = true;
      break;
    }

    const Eigen::Vector3d centroid = (pts[0] + pts[1] + pts[2]) / 3.0;
    const Eigen::Vector3d xr = centroid + (centroid - pts[3]);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const Eigen::Vector3d xe = centroid + 2.0 * (centroid - pts[3]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[3] = xe;
        fv[3] = fe;
      } else {
        pts[3] = xr;
        fv[3] = fr;
      }
    } else if (fr < fv[2]) {
      pts[3] = xr;
      fv[3] = fr;
    } else {
      const bool outside = fr < fv[3];
      const Eigen::Vector3d xc = outside ? centroid + 0.5 * (xr - centroid) : centroid + 0.5 * (pts[3] - centroid);
      const double fc = f(xc);
      if (fc < (outside ? fr : fv[3])) {
        pts[3] = xc;
        fv[3] = fc;
      } else {
        for (int i = 1; i < 4; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {pts[best], fv[best], converged};
}

// Shoemake's map from the unit cube to uniformly distributed unit quaternions.
Eigen::Matrix3d quaternion_sample(const Eigen::Vector3d& u) {
  const double s1 = std::sqrt(1.0 - u(0)), s2 = std::sqrt(u(0));
  const Eigen::Quaterniond quat(s2 * std::cos(TWO_PI * u(2)), s1 * std::sin(TWO_PI * u(1)),
                                s1 * std::cos(TWO_PI * u(1)), s2 * std::sin(TWO_PI * u(2)));
  return quat.normalized().toRotationMatrix();
}

SearchReport search_so3(const Objective& obj, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Eigen::Vector3d shift(unif(rng), unif(rng), unif(rng));

  // Additive recurrence with the generalized golden ratio (x^4 = x + 1).
  double phi3 = 1.5;
  for (int i = 0; i < 60; ++i) phi3 = std::pow(1.0 + phi3, 0.25);
  const Eigen::Vector3d alpha(1.0 / phi3, 1.0 / (phi3 * phi3), 1.0 / (phi3 * phi3 * phi3));

  std::vector<Eigen::Matrix3d> samples(QUASI_N);
  std::vector<double> vals(QUASI_N);
  for (int n = 0; n < QUASI_N; ++n) {
    Eigen::Vector3d u = shift + (n + 1.0) * alpha;
    for (int k = 0; k < 3; ++k) u(k) -= std::floor(u(k));
    samples[n] = quaternion_sample(u);
    vals[n] = obj(samples[n]);
  }
  std::vector<int> order(QUASI_N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });

  // Best seeds, skipping near-duplicates of seeds already chosen.
  std::vector<int> seeds;
  for (int n : order) {
    bool far = true;
    for (int s : seeds) far = far && (samples[n] - samples[s]).norm() > 0.3;
    if (far) seeds.push_back(n);
    if (static_cast<int>(seeds.size()) == REFINE_SEEDS) break;
  }

  SearchReport rep;
  rep.min_distance = std::numeric_limits<double>::infinity();
  for (int s : seeds) {
    const Eigen::Matrix3d base = samples[s];
    const auto f = [&](const Eigen::Vector3d& w) {
      const double d = obj(Eigen::MatrixXd(base * exp_so3(w)));
      return d * d;
    };
    NelderMeadResult res = nelder_mead(f, Eigen::Vector3d::Zero(), 0.1, 3000);
    res = nelder_mead(f, res.x, 1e-3, 3000);
    const double d = std::sqrt(std::max(0.0, res.f));
    if (d < rep.min_distance) {
      rep.min_distance = d;
      rep.best_rotation = base * exp_so3(res.x);
      rep.converged = res.converged;
    }
  }
  return rep;
}

}  // namespace

SearchReport rotation_search(const QuantumSet& qs, const PauliSpace& v1, const PauliSpace& v2, std::uint64_t seed) {
  if (v1.kind != v2.kind || v1.kind != pauli_kind(qs)) throw KindMismatch("rotation_search needs matching Pauli spaces");
  long evaluations = 0;
  const Objective obj{v1.space.projector(), v2.space.projector(), qs.is_tracial(), &evaluations};
  SearchReport rep = qs.is_tracial() ? search_so3(obj, seed) : search_so2(obj, seed);
  rep.evaluations = evaluations;
  return rep;
}

bool oracle_is_isomorphic(const QuantumGraph& g1, const QuantumGraph& g2, double threshold, std::uint64_t seed,
                          SearchReport* report) {
  if (std::abs(g1.qset().q() - g2.qset().q()) > TOL_Q) return false;
  if (g1.edge_count() != g2.edge_count()) return false;
  const QuantumSet& qs = g1.qset();
  const SearchReport rep = rotation_search(qs, to_pauli(qs, g1.basis()), to_pauli(qs, g2.basis()), seed);
  if (report) *report = rep;
  return rep.min_distance < threshold;
}

}  // namespace qgm2
