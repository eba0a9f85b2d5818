#include "xz24/sampling.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include "xz24/errors.hpp"
#include "xz24/rng.hpp"

namespace xz24 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void run_parallel(std::uint64_t n_items, unsigned workers,
                  const std::function<void(std::uint64_t)>& work) {
  if (workers <= 1 || n_items < 2) {
    for (std::uint64_t i = 0; i < n_items; ++i) work(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto loop = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= n_items) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n_threads = std::min<std::uint64_t>(workers, n_items);
  pool.reserve(n_threads);
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("XZ24_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

double SamplingPlan::max_interval(double energy_bound) {
  return std::numbers::pi / energy_bound;
}

SamplingPlan make_plan(double target_delta, double energy_bound,
                       std::optional<double> requested_interval,
                       std::optional<std::uint64_t> shots, SamplingMode mode) {
  if (!(target_delta > 0.0) || !std::isfinite(target_delta))
    throw_invalid("target delta must be positive and finite");
  if (!(energy_bound > 0.0) || !std::isfinite(energy_bound))
    throw_invalid("energy bound must be positive and finite");
  if (shots && *shots < 1) throw_invalid("shot count must be >= 1");

  const double interval_max = SamplingPlan::max_interval(energy_bound);
  double interval = interval_max;
  if (requested_interval) {
    if (!(*requested_interval > 0.0))
      throw_invalid("requested interval must be positive");
    if (*requested_interval > interval_max * (1.0 + 1e-12)) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6g", interval_max);
      throw_invalid("requested interval " + std::to_string(*requested_interval) +
                    " violates the Nyquist limit; maximum interval for bound " +
                    std::to_string(energy_bound) + " is " + buf);
    }
    interval = *requested_interval;
  }

  // Fix t_max at the precision target and shrink the interval until the
  // sample count is an odd integer.
  const double t_max_target = kTwoPi / target_delta;
  std::uint64_t count =
      static_cast<std::uint64_t>(std::ceil(t_max_target / interval - 1e-9));
  if (count % 2 == 0) ++count;
  if (count < 1) count = 1;

  SamplingPlan plan;
  plan.interval = t_max_target / static_cast<double>(count);
  plan.count = count;
  plan.t_max = plan.interval * static_cast<double>(count);
  plan.delta = kTwoPi / plan.t_max;
  plan.mode = mode;
  plan.shots = shots;
  plan.energy_bound = energy_bound;
  return plan;
}

Signal acquire_signal(const Hamiltonian& h, const ReferenceSpec& spec,
                      const SamplingPlan& plan, const AcquireOptions& options) {
  if (plan.count == 0 || plan.count % 2 == 0)
    throw_invalid("sampling plan must have an odd, positive sample count");

  const Propagator prop(h);
  const Eigen::VectorXcd ref = prepare_reference(spec, h.n_qubits());

  const std::uint64_t n_points =
      plan.mode == SamplingMode::mirror ? (plan.count - 1) / 2 + 1 : plan.count;

  Signal signal;
  signal.plan = plan;
  signal.values.assign(plan.count, 0.0);

  auto evaluate = [&](std::uint64_t n) {
    const double t = static_cast<double>(n) * plan.interval;
    CircuitPointResult point;
    if (options.use_circuit) {
      point = run_circuit_point(prop, ref, t);
    } else {
      point.t = t;
      point.q = direct_expectation_point(prop, ref, t);
      point.p1 = 0.5 * (1.0 + point.q);
      point.p0 = 1.0 - point.p1;
    }
    if (plan.shots)
      point = shot_sample(point, *plan.shots, derive_seed(options.seed, n));
    signal.values[n] = point.q;
  };

  run_parallel(n_points, worker_count(), evaluate);

  if (plan.mode == SamplingMode::mirror) {
    for (std::uint64_t n = (plan.count - 1) / 2 + 1; n < plan.count; ++n)
      signal.values[n] = signal.values[plan.count - n];
  }
  return signal;
}

double estimate_energy_bound(const Hamiltonian& h,
                             const std::optional<ReferenceSpec>& spec,
                             bool use_basis_heuristic) {
  if (!use_basis_heuristic) return h.l1_norm_bound();
  if (!spec)
    throw_invalid("the basis-expectation bound heuristic requires a reference");
  const auto bits = spec->single_bitstring();
  if (!bits)
    throw_invalid("the basis-expectation bound heuristic requires a single "
                  "basis-state reference");
  return std::abs(h.basis_expectation(*bits));
}

}  // namespace xz24
