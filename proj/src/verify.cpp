#include "vlq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "vlq/error.hpp"
#include "vlq/message_space.hpp"
#include "vlq/metrics.hpp"
#include "vlq/protocol.hpp"
#include "vlq/sidechannel.hpp"

namespace vlq::verify {

namespace {

ComplexVector gaussian_vector(Rng& rng, std::size_t dim) {
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = {standard_normal(rng), standard_normal(rng)};
  return v;
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

struct Case {
  std::string label;
  SourceEnsemble ensemble;
};

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& detail) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.counterexample = detail();
    }
  }

  // Exceptions inside a case count as failures of this property.
  template <class Fn>
  void guarded(const std::string& label, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      check(false, [&] { return label + ": " + e.what(); });
    }
  }

  PropertyResult take() { return std::move(result_); }

 private:
  PropertyResult result_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Codebook make_codebook(const SourceEnsemble& e, int k, const Options& o) {
  Codebook cb = build_codebook(e, k, o.tol);
  if (o.fault == Fault::NonIsometricEncoder) {
    ComplexMatrix c = cb.encoder();
    for (auto& z : c.row(0)) z *= 1.25;
    cb.override_encoder(std::move(c));
  }
  return cb;
}

}  // namespace

SourceEnsemble random_ensemble(Rng& rng, std::size_t min_dim, std::size_t max_dim, std::size_t min_messages,
                               std::size_t max_messages) {
  const std::size_t dim = pick(rng, min_dim, max_dim);
  const std::size_t count = pick(rng, min_messages, max_messages);
  std::vector<ComplexVector> vecs;
  for (std::size_t m = 0; m < count; ++m) {
    if (m >= 2 && uniform01(rng) < 0.3) {
      // linear combination of two earlier messages
      const std::size_t a = pick(rng, 0, m - 1);
      const std::size_t b = pick(rng, 0, m - 1);
      ComplexVector v = Complex(standard_normal(rng), standard_normal(rng)) * vecs[a];
      if (a != b) v += Complex(standard_normal(rng), standard_normal(rng)) * vecs[b];
      if (v.norm() > 1e-3) {
        vecs.push_back(std::move(v));
        continue;
      }
    }
    vecs.push_back(gaussian_vector(rng, dim));
  }
  std::vector<double> p(count);
  double total = 0.0;
  for (auto& x : p) total += (x = uniform(rng, 0.05, 1.0));
  std::vector<SourceMessage> msgs;
  for (std::size_t m = 0; m < count; ++m) msgs.push_back({"m" + std::to_string(m), vecs[m], p[m] / total});
  return SourceEnsemble(std::move(msgs));
}

std::vector<ComplexVector> random_basis(Rng& rng, std::size_t dim) {
  std::vector<ComplexVector> g;
  for (std::size_t i = 0; i < dim; ++i) g.push_back(gaussian_vector(rng, dim));
  return gram_schmidt(g);
}

ComplexVector random_in_span(Rng& rng, std::span<const ComplexVector> basis) {
  ComplexVector v(basis.front().dim());
  for (const auto& w : basis) v += Complex(standard_normal(rng), standard_normal(rng)) * w;
  return normalize(v);
}

ComplexMatrix random_density(Rng& rng, std::size_t dim) {
  const std::size_t count = pick(rng, 1, 2 * dim);
  ComplexMatrix rho(dim, dim);
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& x : w) total += (x = uniform(rng, 0.01, 1.0));
  for (std::size_t i = 0; i < count; ++i) {
    const ComplexVector v = normalize(gaussian_vector(rng, dim));
    ComplexMatrix proj = ComplexMatrix::outer(v, v);
    proj *= w[i] / total;
    rho += proj;
  }
  return rho;
}

double optimal_prefix_cost(std::span<const double> probabilities) {
  const std::size_t n = probabilities.size();
  if (n == 0) throw DomainError("optimal_prefix_cost: no symbols");
  if (n == 1) return probabilities[0];
  std::vector<int> len(n, 1);
  double best = INFINITY;
  const int max_len = static_cast<int>(n) - 1;
  while (true) {
    double kraft = 0.0;
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      kraft += std::ldexp(1.0, -len[i]);
      cost += probabilities[i] * len[i];
    }
    if (kraft <= 1.0) best = std::min(best, cost);
    std::size_t i = 0;
    while (i < n && len[i] == max_len) len[i++] = 1;
    if (i == n) break;
    ++len[i];
  }
  return best;
}

std::vector<PropertyResult> run(const Options& o) {
  std::vector<Case> cases;
  if (o.ensemble) cases.push_back({"input ensemble", io::to_ensemble(*o.ensemble)});
  for (std::size_t t = 0; t < o.trials; ++t) {
    Rng rng(derive_seed(o.seed, t));
    cases.push_back({"random ensemble #" + std::to_string(t), random_ensemble(rng)});
  }
  const int input_k = o.ensemble ? o.ensemble->k : 2;

  Recorder isometry("isometry");
  Recorder roundtrip("round-trip");
  Recorder soundness("base-length soundness");
  Recorder kraft("kraft");
  Recorder lower("lower bound");
  Recorder upper("upper bound");
  Recorder dephasing("dephasing");
  Recorder determinism("determinism");

  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const Case& c = cases[ci];
    const int k = (o.ensemble && ci == 0) ? input_k : static_cast<int>(2 + ci % 3);
    Rng rng(derive_seed(o.seed ^ 0xA5A5A5A5ull, ci));
    std::optional<Codebook> cb_opt;
    try {
      cb_opt.emplace(make_codebook(c.ensemble, k, o));
    } catch (const std::exception& e) {
      isometry.check(false, [&] { return c.label + ": codebook construction failed: " + e.what(); });
      continue;
    }
    const Codebook& cb = *cb_opt;

    isometry.guarded(c.label, [&] {
      for (int t = 0; t < 50; ++t) {
        const ComplexVector x = random_in_span(rng, cb.basis());
        const ComplexVector y = random_in_span(rng, cb.basis());
        const double err = std::abs(inner(cb.encoder() * x, cb.encoder() * y) - inner(x, y));
        isometry.check(err <= 1e-9, [&] { return c.label + ": |<Cx|Cy> - <x|y>| = " + fmt(err); });
      }
      for (const auto& w : cb.basis()) {
        const double err = max_abs_diff(cb.decoder() * (cb.encoder() * w), w);
        isometry.check(err <= 1e-9, [&] { return c.label + ": |DCw - w| = " + fmt(err); });
      }
    });

    roundtrip.guarded(c.label, [&] {
      for (std::size_t m = 0; m < c.ensemble.size(); ++m) {
        const ComplexVector& x = c.ensemble.state(m);
        const double f = std::norm(inner(x, decode(cb, encode(cb, x, o.tol))));
        roundtrip.check(f >= 1.0 - 1e-9, [&] {
          return c.label + ": message " + c.ensemble.messages()[m].id + " fidelity " + fmt(f);
        });
      }
      const SideChannel side = build_side_channel(c.ensemble, cb);
      const auto t = run_session(c.ensemble, cb, side.table, o.session_messages, derive_seed(o.seed, 7000 + ci));
      roundtrip.check(verify_lossless(t, c.ensemble), [&] { return c.label + ": session lost fidelity"; });
    });

    soundness.guarded(c.label, [&] {
      for (std::size_t m = 0; m < c.ensemble.size(); ++m) {
        const VariableLengthState s = encode(cb, c.ensemble.state(m), o.tol);
        const int L = cb.base_length_of(c.ensemble.messages()[m].id);
        soundness.check(base_length(s) == L, [&] {
          return c.label + ": tabulated base length " + std::to_string(L) + " but state has " +
                 std::to_string(base_length(s));
        });
        soundness.check(expected_length(s) <= L + 1e-9, [&] { return c.label + ": expected length above base length"; });
        const ComplexVector payload = truncate(s, L);
        soundness.check(max_abs_diff(pad(payload, cb.spec()).amps(), s.amps()) <= 1e-12,
                        [&] { return c.label + ": pad(truncate(s)) != s"; });
      }
    });

    kraft.guarded(c.label, [&] {
      const SideChannel side = build_side_channel(c.ensemble, cb);
      kraft.check(is_prefix_free(side.table), [&] { return c.label + ": Huffman table not prefix-free"; });
      kraft.check(kraft_sum(side.table) <= 1.0 + 1e-12, [&] { return c.label + ": Huffman Kraft sum > 1"; });
      const auto qk = quantum_kraft_trace(cb.code_lengths(), k);
      // Neutral-prefix lengths exceed 1 as soon as two codewords exist.
      kraft.check(qk.admissible == (cb.code_dim() <= 1), [&] {
        return c.label + ": unexpected quantum Kraft trace " + fmt(qk.value);
      });
      const double h = shannon_entropy(side.distribution);
      const double l = expected_code_length(side.table, side.distribution);
      const bool chain = side.distribution.size() == 1 ? (h == 0.0 && l == 1.0) : (h <= l + 1e-12 && l < h + 1.0);
      kraft.check(chain, [&] { return c.label + ": I'=" + fmt(h) + " L'=" + fmt(l) + " violates I' <= L' < I'+1"; });
    });

    lower.guarded(c.label, [&] {
      const SideChannel side = build_side_channel(c.ensemble, cb);
      const CompressionReport rep = build_report(c.ensemble, cb, side);
      lower.check(rep.lower_bound_satisfied, [&] {
        return c.label + ": I_c + I' - S = " + fmt(rep.lower_bound_slack);
      });
      upper.check(rep.upper_bound_satisfied, [&] { return c.label + ": I_c = " + fmt(rep.code_information); });
      const double s_ens = shannon_entropy(c.ensemble.probabilities());
      lower.check(rep.von_neumann_entropy <= s_ens + 1e-9, [&] { return c.label + ": S(sigma) > H(Sigma)"; });
    });

    dephasing.guarded(c.label, [&] {
      const ComplexMatrix sigma = message_matrix(c.ensemble);
      const auto basis = random_basis(rng, c.ensemble.ambient_dim());
      const auto d = dephasing_entropy_check(sigma, basis);
      dephasing.check(d.satisfied, [&] {
        return c.label + ": S=" + fmt(d.entropy) + " > S(dephased)=" + fmt(d.dephased_entropy);
      });
      const auto rho = random_density(rng, pick(rng, 2, 6));
      const auto d2 = dephasing_entropy_check(rho, random_basis(rng, rho.rows()));
      dephasing.check(d2.satisfied, [&] { return c.label + ": random density matrix violates dephasing"; });
    });

    if (ci < 5) {
      determinism.guarded(c.label, [&] {
        const SideChannel side = build_side_channel(c.ensemble, cb);
        const auto s1 = io::emit_transcript(run_session(c.ensemble, cb, side.table, 200, o.seed));
        const auto s2 = io::emit_transcript(run_session(c.ensemble, cb, side.table, 200, o.seed));
        determinism.check(s1 == s2, [&] { return c.label + ": transcripts differ for one seed"; });
      });
    }
  }

  // Huffman optimality on the 0.05 grid, up to 5 symbols. Costs are compared
  // in integer units of 0.05 so equality is exact.
  Recorder huffman("huffman optimality");
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<int> w(n, 1);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
      if (pos + 1 == n) {
        w[pos] = left;
        std::map<int, double> entries;
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = entries[static_cast<int>(i)] = w[i] / 20.0;
        const LengthDistribution dist{std::move(entries)};
        const PrefixCodeTable table = build_huffman(dist);
        long huff_units = 0;
        for (std::size_t i = 0; i < n; ++i) huff_units += w[i] * static_cast<long>(table.at(static_cast<int>(i)).size());
        const long opt_units = std::lround(optimal_prefix_cost(p) * 20.0);
        huffman.check(huff_units == opt_units && is_prefix_free(table), [&] {
          std::string s = "weights/20 =";
          for (int x : w) s += " " + std::to_string(x);
          return s + ": huffman " + std::to_string(huff_units) + " vs optimum " + std::to_string(opt_units);
        });
        return;
      }
      for (int x = 1; x <= left - static_cast<int>(n - pos - 1); ++x) {
        w[pos] = x;
        rec(pos + 1, left - x);
      }
    };
    rec(0, 20);
  }

  Recorder nogo("no-go scans");
  for (std::uint64_t dim = 1; dim <= 64; ++dim)
    for (int k = 2; k <= 4; ++k)
      for (int n = 0; n <= 6; ++n) {
        const auto v = no_go_block_code(dim, k, n);
        nogo.check(!(v.feasible && v.compressive), [&] {
          return "compressive block code reported for dim=" + std::to_string(dim) + " k=" + std::to_string(k) +
                 " n=" + std::to_string(n);
        });
      }
  for (int k = 2; k <= 4; ++k)
    for (int r = 1; r <= 10; ++r)
      for (int s = 0; s < r; ++s) {
        const auto v = no_go_universal(k, r, s);
        nogo.check(!v.block_to_variable_feasible && !v.variable_to_variable_feasible, [&] {
          return "universal compression reported feasible for k=" + std::to_string(k) + " r=" +
                 std::to_string(r) + " s=" + std::to_string(s);
        });
      }

  Recorder born("length measurement");
  {
    Rng rng(derive_seed(o.seed, 99991));
    for (int t = 0; t < 5; ++t) {
      const RegisterSpec spec(2 + t % 2, 2 + t % 2);
      const VariableLengthState s(spec, normalize(gaussian_vector(rng, spec.dim())));
      const auto p = s.length_probabilities();
      const int samples = 20000;
      std::vector<int> counts(p.size(), 0);
      for (int i = 0; i < samples; ++i) {
        const auto out = measure_length(s, rng);
        ++counts[static_cast<std::size_t>(out.length)];
        if (i < 50) born.check(out.collapsed.amps().is_unit(1e-10), [&] { return std::string("collapsed state not unit"); });
      }
      for (std::size_t n = 0; n < p.size(); ++n) {
        const double freq = static_cast<double>(counts[n]) / samples;
        const double se = std::sqrt(p[n] * (1.0 - p[n]) / samples);
        born.check(std::abs(freq - p[n]) <= 3.0 * se + 1e-12, [&] {
          return "length " + std::to_string(n) + ": frequency " + fmt(freq) + " vs probability " + fmt(p[n]);
        });
      }
    }
  }

  std::vector<PropertyResult> out;
  for (Recorder* r : {&isometry, &roundtrip, &soundness, &kraft, &huffman, &lower, &upper, &nogo, &dephasing,
                      &born, &determinism})
    out.push_back(r->take());
  return out;
}

bool all_passed(const std::vector<PropertyResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

}  // namespace vlq::verify
