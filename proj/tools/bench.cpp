// Benchmark: OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <random>

#include "torext/linalg.hpp"
#include "torext/parallel.hpp"

using namespace torext;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

linalg::Mat random_matrix(int n, int m, uint32_t p, std::mt19937& rng) {
    linalg::Mat a(n, m, p);
    for (auto& x : a.a) x = rng() % p;
    return a;
}

template <class F>
double time_best_of(int reps, F&& fn) {
    double best = 1e30;
    for (int i = 0; i < reps; ++i) {
        auto t0 = Clock::now();
        fn();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

}  // namespace

int main() {
    std::mt19937 rng(42);
    uint32_t p = 101;
    std::printf("threads available: %d\n", thread_budget());
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");
    for (int n : {256, 512, 1024}) {
        linalg::Mat a = random_matrix(n, n, p, rng);
        linalg::Mat b = random_matrix(n, n, p, rng);
        linalg::Mat r1, r2;
        double ts = time_best_of(3, [&] { r1 = linalg::mul_serial(a, b); });
        double tp = time_best_of(3, [&] { r2 = linalg::mul(a, b); });
        if (!(r1 == r2)) {
            std::printf("matmul mismatch!\n");
            return 1;
        }
        std::printf("matmul %4dx%-4d            %9.4fs %9.4fs %7.2fx\n", n, n, ts, tp, ts / tp);
    }
    for (int n : {256, 512, 1024}) {
        linalg::Mat a = random_matrix(n, n + n / 2, p, rng);
        int rk1 = 0, rk2 = 0;
        double ts = time_best_of(3, [&] { rk1 = linalg::rank_of_serial(a); });
        double tp = time_best_of(3, [&] { rk2 = linalg::rank_of(a); });
        if (rk1 != rk2) {
            std::printf("rank mismatch!\n");
            return 1;
        }
        std::printf("row reduction %4dx%-5d     %9.4fs %9.4fs %7.2fx\n", n, n + n / 2, ts, tp,
                    ts / tp);
    }
    return 0;
}
