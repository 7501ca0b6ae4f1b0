// Acceptance suite: one check per criterion, each printed as a pass/fail
// line with its measured margin and runtime. Exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "daplsr/bench.hpp"
#include "daplsr/manifold.hpp"
#include "daplsr/metrics.hpp"
#include "daplsr/pls.hpp"
#include "daplsr/smote.hpp"
#include "daplsr/solver.hpp"
#include "daplsr/vdm.hpp"
#include "oracles.hpp"

using namespace daplsr;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<SolveTrace> g_traces;  // every solver trace produced by this suite

void collect(const SolveTrace& trace) { g_traces.push_back(trace); }
void collect(const DaplsrDiagnostics& diag) {
  for (const auto& t : diag.inner_traces) g_traces.push_back(t);
}

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- criterion 1
Criterion gradient_correctness() {
  auto start = Clock::now();
  Criterion crit{1, "gradient correctness (finite differences)"};
  double worst = 0.0;
  const double h = 1e-6;
  for (int instance = 0; instance < 50; ++instance) {
    std::mt19937_64 rng(instance);
    std::uniform_int_distribution<int> d_dist(3, 10), q_dist(2, 5), c_dist(1, 3);
    int d = d_dist(rng), q = q_dist(rng);
    int c = std::min(c_dist(rng), std::min(d, q));
    int n = d + 5;
    Matrix Xs = oracles::random_matrix(n, d, instance * 31 + 1);
    Matrix Ys = oracles::random_matrix(n, q, instance * 31 + 2);
    Matrix S = Xs.transpose() * Ys;
    GeneralizedStiefel gs = GeneralizedStiefel::from_data(Xs, c);
    Oblique ob(q, c);
    Matrix W = gs.random_point(instance * 31 + 3);
    Matrix C = ob.random_point(instance * 31 + 4);

    Matrix grad_w = gs.rgrad(W, S * C);
    auto f_w = [&](const Matrix& W_) { return (W_.transpose() * S * C).trace(); };
    for (int dir = 0; dir < 10; ++dir) {
      Matrix xi = gs.project(W, oracles::random_matrix(d, c, instance * 977 + dir));
      xi /= gs.norm(W, xi);
      double analytic = gs.inner(W, grad_w, xi);
      double numeric = (f_w(gs.retract(W, h * xi)) - f_w(gs.retract(W, -h * xi))) / (2 * h);
      worst = std::max(worst, std::abs(numeric - analytic) / std::max(1.0, std::abs(analytic)));
    }

    Matrix grad_c = ob.rgrad(C, S.transpose() * W);
    auto f_c = [&](const Matrix& C_) { return (W.transpose() * S * C_).trace(); };
    for (int dir = 0; dir < 10; ++dir) {
      Matrix xi = ob.project(C, oracles::random_matrix(q, c, instance * 1201 + dir));
      xi /= ob.norm(C, xi);
      double analytic = ob.inner(C, grad_c, xi);
      double numeric = (f_c(ob.retract(C, h * xi)) - f_c(ob.retract(C, -h * xi))) / (2 * h);
      worst = std::max(worst, std::abs(numeric - analytic) / std::max(1.0, std::abs(analytic)));
    }
  }
  crit.seconds = elapsed(start);
  crit.pass = worst < 1e-5 && crit.seconds < 10.0;
  crit.detail = "max rel err " + fmt(worst);
  return crit;
}

// ---------------------------------------------------------------- criterion 2
Criterion manifold_feasibility() {
  auto start = Clock::now();
  Criterion crit{2, "manifold feasibility under retraction stress"};
  GeneralizedStiefel gs(oracles::random_spd(8, 1234), 3);
  Oblique ob(6, 3);
  Matrix W = gs.random_point(1);
  Matrix C = ob.random_point(2);
  double worst_gs = 0.0, worst_ob = 0.0;
  for (int step = 0; step < 1000; ++step) {
    double scale = std::pow(10.0, (step % 7) - 3);  // step norms 1e-3 .. 1e3
    Matrix xi = gs.project(W, oracles::random_matrix(8, 3, 5000 + step));
    W = gs.retract(W, xi * (scale / std::max(gs.norm(W, xi), 1e-300)));
    worst_gs = std::max(worst_gs, gs.feasibility_error(W));

    Matrix eta = ob.project(C, oracles::random_matrix(6, 3, 9000 + step));
    C = ob.retract(C, eta * (scale / std::max(eta.norm(), 1e-300)));
    worst_ob = std::max(worst_ob, ob.feasibility_error(C));
  }
  crit.seconds = elapsed(start);
  crit.pass = worst_gs <= 1e-8 && worst_ob <= 1e-12 && crit.seconds < 5.0;
  crit.detail = "worst gs " + fmt(worst_gs) + ", worst oblique " + fmt(worst_ob);
  return crit;
}

// ---------------------------------------------------------------- criterion 3
Criterion solver_optimality() {
  auto start = Clock::now();
  Criterion crit{3, "solver optimality vs eigenvector and grid oracles"};
  int aligned = 0;
  double worst_align = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Matrix half = oracles::random_matrix(5, 5, seed * 17 + 3);
    Matrix A = 0.5 * (half + half.transpose());
    GeneralizedStiefel sphere(Matrix::Identity(5, 5), 1);
    AscentProblem problem{[&A](const Matrix& x) { return (x.transpose() * A * x)(0, 0); },
                          [&A](const Matrix& x) -> Matrix { return 2.0 * A * x; }};
    SolverParams params;
    params.grad_tol = 1e-10;
    params.max_iters = 2000;
    auto res = maximize(problem, sphere, sphere.random_point(seed), params);
    collect(res.trace);
    Vector v1 = oracles::dominant_eigenvector(A);
    double align = std::abs((res.x.col(0).transpose() * v1)(0, 0));
    worst_align = std::min(worst_align, align);
    if (align > 1.0 - 1e-8) ++aligned;
  }

  // c = 1 alternating fit on a tiny problem vs an exhaustive angular grid:
  // w = L^{-T} u(theta, phi) sweeps the B-ellipsoid and the optimal unit C
  // is closed-form, so f*(w) = ||Yc' Xc w||.
  Matrix X = oracles::random_matrix(8, 3, 61);
  Matrix Y = oracles::random_matrix(8, 2, 62);
  DaplsrOptions options;
  options.components = 1;
  DaplsrDiagnostics diag;
  daplsr_fit(X, Y, options, &diag);
  collect(diag);

  auto [Xc, xm] = mean_center(X);
  auto [Yc, ym] = mean_center(Y);
  Matrix B = Xc.transpose() * Xc + GeneralizedStiefel::data_ridge(Xc) * Matrix::Identity(3, 3);
  Eigen::LLT<Eigen::MatrixXd> llt(B);
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd M = (Yc.transpose() * Xc) * L.transpose().inverse();
  double grid_best = 0.0;
  const double step = 1e-3;
  for (double theta = 0.0; theta <= M_PI + step; theta += step) {
    double st = std::sin(theta), ct = std::cos(theta);
    for (double phi = 0.0; phi < 2.0 * M_PI + step; phi += step) {
      Eigen::Vector3d u(st * std::cos(phi), st * std::sin(phi), ct);
      grid_best = std::max(grid_best, (M * u).norm());
    }
  }
  double gap = std::abs(diag.final_objective - grid_best);

  crit.seconds = elapsed(start);
  crit.pass = aligned == 20 && gap <= 1e-4 && crit.seconds < 30.0;
  crit.detail = std::to_string(aligned) + "/20 eigenvector runs aligned (worst deficit " +
                fmt(1.0 - worst_align) + "), grid gap " + fmt(gap);
  return crit;
}

// ---------------------------------------------------------------- criterion 4
Criterion monotone_ascent() {
  auto start = Clock::now();
  Criterion crit{4, "monotone ascent across all solver traces"};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    int d = 3 + static_cast<int>(seed % 5);
    int c = 1 + static_cast<int>(seed % 2);
    GeneralizedStiefel gs(oracles::random_spd(d, seed + 4000), c);
    Matrix A = oracles::random_matrix(d, c, seed + 5000);
    AscentProblem linear{[A](const Matrix& W) { return (W.transpose() * A).trace(); },
                         [A](const Matrix&) -> Matrix { return A; }};
    SolverParams params;
    params.max_iters = 50;
    collect(maximize(linear, gs, gs.random_point(seed), params).trace);

    Oblique ob(d, c);
    collect(maximize(linear, ob, ob.random_point(seed), params).trace);
  }

  std::size_t violations = 0;
  std::size_t records = 0;
  for (const auto& trace : g_traces) {
    records += trace.iterations.size();
    for (std::size_t i = 1; i < trace.iterations.size(); ++i) {
      double prev = trace.iterations[i - 1].objective;
      if (trace.iterations[i].objective < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
        ++violations;
      }
    }
  }
  crit.seconds = elapsed(start);
  crit.pass = violations == 0 && !g_traces.empty();
  crit.detail = std::to_string(violations) + " violations over " + std::to_string(g_traces.size()) +
                " traces (" + std::to_string(records) + " records)";
  return crit;
}

// ---------------------------------------------------------------- criterion 5
Criterion simpls_oracle() {
  auto start = Clock::now();
  Criterion crit{5, "simpls weight matches the leading singular vector"};
  double worst = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Matrix X = oracles::random_matrix(12, 6, seed * 101 + 11);
    Matrix Y = oracles::random_matrix(12, 3, seed * 101 + 12);
    auto model = simpls_fit(X, Y, 1);
    auto [Xc, xm] = mean_center(X);
    auto [Yc, ym] = mean_center(Y);
    auto pair = oracles::leading_singular_pair(Xc.transpose() * Yc);
    worst = std::min(worst, std::abs(model.W.col(0).dot(pair.left)));
  }
  crit.seconds = elapsed(start);
  crit.pass = worst > 1.0 - 1e-10;
  crit.detail = "worst |cosine| deficit " + fmt(1.0 - worst);
  return crit;
}

// ---------------------------------------------------------------- criterion 6
Criterion smote_invariants() {
  auto start = Clock::now();
  Criterion crit{6, "smote segment, label and count invariants"};
  double worst_residual = 0.0;
  bool labels_ok = true, counts_ok = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> q_dist(2, 4), d_dist(2, 8), min_dist(5, 12),
        extra_dist(8, 30), pct_dist(1, 3);
    int q = q_dist(rng), d = d_dist(rng);
    LabeledDataset ds;
    ds.num_classes = q;
    std::vector<int> counts(q);
    int total = 0;
    for (int c = 0; c < q; ++c) {
      counts[c] = min_dist(rng) + (c == q - 1 ? extra_dist(rng) : 0);  // last class majority
      total += counts[c];
    }
    ds.features = oracles::random_matrix(total, d, seed + 300);
    for (int c = 0; c < q; ++c) {
      for (int i = 0; i < counts[c]; ++i) ds.labels.push_back(c);
    }
    std::shuffle(ds.labels.begin(), ds.labels.end(), rng);
    counts = ds.class_counts();
    int max_count = *std::max_element(counts.begin(), counts.end());

    AugmentPlan plan{3, 100.0 * pct_dist(rng), seed, NeighborMetric::kVdm};
    auto model = fit_vdm(ds, 6);
    auto aug = oversample(ds, plan, model);

    long expected = 0;
    for (int c = 0; c < q; ++c) {
      if (counts[c] < max_count) expected += counts[c] * static_cast<long>(plan.percent / 100.0);
    }
    if (static_cast<long>(aug.log.size()) != expected) counts_ok = false;

    for (std::size_t s = 0; s < aug.log.size(); ++s) {
      const auto& rec = aug.log[s];
      int row = ds.rows() + static_cast<int>(s);
      Eigen::RowVectorXd expected_row =
          ds.features.row(rec.base) +
          rec.zeta * (ds.features.row(rec.neighbor) - ds.features.row(rec.base));
      worst_residual =
          std::max(worst_residual, (aug.dataset.features.row(row) - expected_row).norm());
      if (aug.dataset.labels[row] != ds.labels[rec.base]) labels_ok = false;
    }
  }
  crit.seconds = elapsed(start);
  crit.pass = worst_residual < 1e-12 && labels_ok && counts_ok;
  crit.detail = "worst segment residual " + fmt(worst_residual) +
                (labels_ok ? "" : ", label purity violated") +
                (counts_ok ? "" : ", count arithmetic violated");
  return crit;
}

// ---------------------------------------------------------------- criterion 7
Criterion vdm_oracle() {
  auto start = Clock::now();
  Criterion crit{7, "vdm matrix equals brute-force table evaluation"};
  bool exact = true, symmetric = true, zero_diag = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> q_dist(2, 5), d_dist(1, 6), n_dist(5, 30);
    LabeledDataset ds;
    ds.num_classes = q_dist(rng);
    int n = n_dist(rng);
    ds.features = oracles::random_matrix(n, d_dist(rng), seed + 600);
    std::uniform_int_distribution<int> lab(0, ds.num_classes - 1);
    for (int i = 0; i < n; ++i) ds.labels.push_back(lab(rng));

    auto model = fit_vdm(ds, 5);
    auto D = vdm_matrix(model, ds.features);
    for (int i = 0; i < n; ++i) {
      if (D(i, i) != 0.0) zero_diag = false;
      for (int j = 0; j < n; ++j) {
        if (D(i, j) != D(j, i)) symmetric = false;
        if (D(i, j) != oracles::vdm_bruteforce(model, ds.features.row(i), ds.features.row(j))) {
          exact = false;
        }
      }
    }
  }
  crit.seconds = elapsed(start);
  crit.pass = exact && symmetric && zero_diag;
  crit.detail = std::string(exact ? "exact" : "MISMATCH") + ", " +
                (symmetric ? "symmetric" : "ASYMMETRIC") + ", " +
                (zero_diag ? "zero diagonal" : "NONZERO DIAGONAL");
  return crit;
}

// ---------------------------------------------------------------- criterion 8
Criterion metrics_oracle() {
  auto start = Clock::now();
  Criterion crit{8, "metrics match the per-class counting oracle"};
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> q_dist(2, 6), n_dist(10, 120);
    int q = q_dist(rng), n = n_dist(rng);
    std::uniform_int_distribution<int> cls(0, q - 1);
    std::vector<int> y_true(n), y_pred(n);
    for (int i = 0; i < n; ++i) {
      y_true[i] = cls(rng);
      y_pred[i] = cls(rng);
    }
    auto report = evaluate(confusion(y_true, y_pred, q));
    auto expected = oracles::metrics_bruteforce(y_true, y_pred, q);
    worst = std::max(worst, std::abs(report.accuracy - expected.accuracy));
    worst = std::max(worst, std::abs(report.g_mean - expected.g_mean));
    worst = std::max(worst, std::abs(report.precision - expected.precision));
    worst = std::max(worst, std::abs(report.recall - expected.recall));
    worst = std::max(worst, std::abs(report.f_measure - expected.f_measure));
  }

  ConfusionMatrix flat;
  flat.num_classes = 2;
  flat.counts = {1, 1, 1, 1};
  auto half = evaluate(flat);
  bool half_ok = half.accuracy == 0.5 && half.g_mean == 0.5 && half.precision == 0.5 &&
                 half.recall == 0.5 && half.f_measure == 0.5;

  crit.seconds = elapsed(start);
  crit.pass = worst <= 1e-15 && half_ok;
  crit.detail = "worst deviation " + fmt(worst) + (half_ok ? "" : ", [[1,1],[1,1]] case wrong");
  return crit;
}

// ------------------------------------------------------- criteria 9 and 10
// Shared experiment on the imbalanced Gaussian-blob family: for each seed,
// fit simpls and daplsr (the latter on the VDM-SMOTE balanced training set)
// at c = 1 and c = 3 and score the held-out test set.
struct BlobOutcome {
  double simpls_gmean_c3;
  double daplsr_gmean_c3;
  double simpls_err_c1, simpls_err_c3;
  double daplsr_err_c1, daplsr_err_c3;
};

BlobOutcome run_blob_seed(std::uint64_t seed) {
  SynthSpec spec;
  spec.per_class_counts = {200, 40, 40};
  spec.dims = 20;
  spec.cluster_spread = 1.8;  // keeps the baseline g-mean inside [0.6, 0.95]
  spec.seed = 1000 + seed;
  auto ds = synth_dataset(spec);
  auto [train, test] = stratified_split(ds, 0.75, seed);

  auto vdm = fit_vdm(train, 10);
  AugmentPlan plan{5, 400.0, derive_seed(seed, "smote"), NeighborMetric::kVdm};
  auto augmented = oversample(train, plan, vdm).dataset;

  Matrix y_train = one_hot(train.labels, 3);
  Matrix y_aug = one_hot(augmented.labels, 3);

  BlobOutcome out{};
  for (int c : {1, 3}) {
    auto sim = simpls_fit(train.features, y_train, c);
    auto sim_report = evaluate(confusion(test.labels, classify(sim, test.features), 3));

    DaplsrOptions options;
    options.components = c;
    options.seed = derive_seed(seed, "daplsr");
    DaplsrDiagnostics diag;
    auto dap = daplsr_fit(augmented.features, y_aug, options, &diag);
    collect(diag);
    auto dap_report = evaluate(confusion(test.labels, classify(dap, test.features), 3));

    if (c == 1) {
      out.simpls_err_c1 = 1.0 - sim_report.accuracy;
      out.daplsr_err_c1 = 1.0 - dap_report.accuracy;
    } else {
      out.simpls_err_c3 = 1.0 - sim_report.accuracy;
      out.daplsr_err_c3 = 1.0 - dap_report.accuracy;
      out.simpls_gmean_c3 = sim_report.g_mean;
      out.daplsr_gmean_c3 = dap_report.g_mean;
    }
  }
  return out;
}

std::vector<BlobOutcome> g_blob_outcomes;

Criterion augmentation_helps() {
  auto start = Clock::now();
  Criterion crit{9, "augmentation lifts g-mean over the simpls baseline"};
  g_blob_outcomes.clear();
  for (std::uint64_t seed = 0; seed < 5; ++seed) g_blob_outcomes.push_back(run_blob_seed(seed));

  double sim_mean = 0.0, dap_mean = 0.0;
  double sim_lo = 1.0, sim_hi = 0.0;
  int improved = 0;
  for (const auto& o : g_blob_outcomes) {
    sim_mean += o.simpls_gmean_c3 / 5.0;
    dap_mean += o.daplsr_gmean_c3 / 5.0;
    sim_lo = std::min(sim_lo, o.simpls_gmean_c3);
    sim_hi = std::max(sim_hi, o.simpls_gmean_c3);
    if (o.daplsr_gmean_c3 > o.simpls_gmean_c3) ++improved;
  }
  crit.seconds = elapsed(start);
  bool baseline_in_band = sim_lo >= 0.6 && sim_hi <= 0.95;
  crit.pass = baseline_in_band && dap_mean > sim_mean && improved >= 4 && crit.seconds < 60.0;
  crit.detail = "simpls g-mean " + fmt(sim_mean) + " (range " + fmt(sim_lo) + ".." + fmt(sim_hi) +
                "), daplsr g-mean " + fmt(dap_mean) + ", improved " + std::to_string(improved) +
                "/5";
  return crit;
}

Criterion error_falls_with_components() {
  auto start = Clock::now();
  Criterion crit{10, "error falls from c=1 to c=3 for simpls and daplsr"};
  double sim1 = 0.0, sim3 = 0.0, dap1 = 0.0, dap3 = 0.0;
  for (const auto& o : g_blob_outcomes) {
    sim1 += o.simpls_err_c1 / 5.0;
    sim3 += o.simpls_err_c3 / 5.0;
    dap1 += o.daplsr_err_c1 / 5.0;
    dap3 += o.daplsr_err_c3 / 5.0;
  }
  crit.seconds = elapsed(start);
  crit.pass = !g_blob_outcomes.empty() && sim3 <= sim1 && dap3 <= dap1;
  crit.detail = "simpls err " + fmt(sim1) + " -> " + fmt(sim3) + ", daplsr err " + fmt(dap1) +
                " -> " + fmt(dap3);
  return crit;
}

// --------------------------------------------------------------- criterion 11
Criterion determinism() {
  auto start = Clock::now();
  Criterion crit{11, "repeated runs emit byte-identical reports"};

  SynthSpec spec;
  spec.per_class_counts = {60, 20, 20};
  spec.dims = 8;
  spec.cluster_spread = 0.5;
  spec.seed = 77;
  save_csv(synth_dataset(spec), "acceptance_blobs.csv");

  ExperimentConfig cfg;
  cfg.dataset_path = "acceptance_blobs.csv";
  cfg.train_fraction = 0.75;
  cfg.augmentation.percent = 200.0;
  cfg.augmentation.k = 4;
  cfg.vdm_bins = 10;
  cfg.methods = {"nipals", "simpls", "daplsr"};
  cfg.components = {1, 2};
  cfg.repeats = 2;
  cfg.base_seed = 3;

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  auto t1 = run(cfg);
  auto t2 = run(cfg);
  emit(t1, ReportFormat::kCsv, "acceptance_a.csv");
  emit(t2, ReportFormat::kCsv, "acceptance_b.csv");
  emit(t1, ReportFormat::kJson, "acceptance_a.json");
  emit(t2, ReportFormat::kJson, "acceptance_b.json");
  bool csv_same = slurp("acceptance_a.csv") == slurp("acceptance_b.csv");
  bool json_same = slurp("acceptance_a.json") == slurp("acceptance_b.json");
  bool nonempty = !slurp("acceptance_a.csv").empty();
  for (const char* f : {"acceptance_blobs.csv", "acceptance_a.csv", "acceptance_b.csv",
                        "acceptance_a.json", "acceptance_b.json"}) {
    std::remove(f);
  }

  crit.seconds = elapsed(start);
  crit.pass = csv_same && json_same && nonempty;
  crit.detail = std::string(csv_same ? "csv identical" : "CSV DIFFERS") + ", " +
                (json_same ? "json identical" : "JSON DIFFERS");
  return crit;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(gradient_correctness());
  results.push_back(manifold_feasibility());
  results.push_back(solver_optimality());
  results.push_back(simpls_oracle());
  results.push_back(smote_invariants());
  results.push_back(vdm_oracle());
  results.push_back(metrics_oracle());
  results.push_back(augmentation_helps());
  results.push_back(error_falls_with_components());
  results.push_back(determinism());
  results.push_back(monotone_ascent());  // last: checks every collected trace

  std::sort(results.begin(), results.end(),
            [](const Criterion& a, const Criterion& b) { return a.id < b.id; });

  bool all_pass = true;
  for (const auto& crit : results) {
    all_pass = all_pass && crit.pass;
    std::printf("[%s] criterion %2d: %s — %s (%.2fs)\n", crit.pass ? "PASS" : "FAIL", crit.id,
                crit.name.c_str(), crit.detail.c_str(), crit.seconds);
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
