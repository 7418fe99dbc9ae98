// Times the OpenMP kernels against the plain serial reference on inputs big
// enough to cross the parallel grain, and checks the outputs match bitwise.
// Build target: bench_kernels. Run with OMP_NUM_THREADS=n to vary threads.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gvi/kernels.hpp"
#include "gvi/reference.hpp"
#include "gvi/rng.hpp"
#include "gvi/types.hpp"

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
#endif
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now();
        fn();
        best = std::min(best, now() - t0);
    }
    return best;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void report(const char* name, double serial_s, double parallel_s, bool match) {
    std::printf("%-22s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n", name,
                serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
                match ? "bitwise-equal" : "MISMATCH");
}

gvi::Mdp random_mdp(int n_states, int n_actions, gvi::SplitMix64& rng) {
    gvi::Mdp m(n_states, n_actions, 0.99, 1.0);
    for (int s = 0; s < n_states; ++s)
        for (int a = 0; a < n_actions; ++a) {
            double sum = 0.0;
            for (int s2 = 0; s2 < n_states; ++s2) {
                double w = rng.next_double() + 1e-3;
                m.p(s, a, s2) = w;
                sum += w;
            }
            for (int s2 = 0; s2 < n_states; ++s2) m.p(s, a, s2) /= sum;
            m.r(s, a) = 2.0 * rng.next_double() - 1.0;
        }
    return m;
}

}  // namespace

int main() {
    gvi::SplitMix64 rng(42);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled (serial build)\n");
#endif

    {
        const int S = 20000, A = 200;
        std::vector<double> q(static_cast<size_t>(S) * A);
        for (double& v : q) v = 4.0 * rng.next_double() - 2.0;
        std::vector<double> out_ref(S), out_par(S);
        gvi::SoftmaxTemp beta(10.0);

        double ts = time_best_of(5, [&] {
            gvi::reference::softmax_value(q.data(), S, A, beta, out_ref.data());
        });
        double tp = time_best_of(5, [&] {
            gvi::kernels::softmax_value(q.data(), S, A, beta, out_par.data());
        });
        report("softmax_value", ts, tp, bitwise_equal(out_ref, out_par));

        std::vector<double> probs_ref(q.size()), probs_par(q.size());
        ts = time_best_of(5, [&] {
            gvi::reference::boltzmann_policy(q.data(), S, A, 10.0, probs_ref.data());
        });
        tp = time_best_of(5, [&] {
            gvi::kernels::boltzmann_policy(q.data(), S, A, 10.0, probs_par.data());
        });
        report("boltzmann_policy", ts, tp, bitwise_equal(probs_ref, probs_par));
    }

    {
        const int S = 700, A = 12;
        gvi::Mdp m = random_mdp(S, A, rng);
        std::vector<double> v(S), q(static_cast<size_t>(S) * A);
        for (double& x : v) x = rng.next_double();
        for (double& x : q) x = rng.next_double();
        std::vector<double> out_ref(q.size()), out_par(q.size());

        double ts = time_best_of(5, [&] {
            gvi::reference::bellman_from_value(m, v.data(), out_ref.data());
        });
        double tp = time_best_of(5, [&] {
            gvi::kernels::bellman_from_value(m, v.data(), out_par.data());
        });
        report("bellman_from_value", ts, tp, bitwise_equal(out_ref, out_par));

        ts = time_best_of(5, [&] {
            gvi::reference::gvi_from_value(m, q.data(), v.data(), 0.8, out_ref.data());
        });
        tp = time_best_of(5, [&] {
            gvi::kernels::gvi_from_value(m, q.data(), v.data(), 0.8, out_par.data());
        });
        report("gvi_from_value", ts, tp, bitwise_equal(out_ref, out_par));
    }

    return 0;
}
