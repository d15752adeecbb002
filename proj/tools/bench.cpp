// Benchmark comparing the OpenMP node-parallel kernels with their serial
// reference implementations: connection solve, quadrature, conformal law
// verification. Results must agree exactly (the parallel reductions are
// deterministic), so the comparison also doubles as a consistency check.

#include <chrono>
#include <cstdio>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "crv/conformal.hpp"
#include "crv/volume.hpp"

using namespace crv;
using clk = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = clk::now();
        f();
        auto t1 = clk::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
#if defined(_OPENMP)
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp not enabled\n");
#endif

    S3Params p;
    p.squash = 1.2;
    p.n_radial = 16;
    p.n_angle = 16;
    auto m = make_sphere(p);
    std::printf("sphere nodes: %zu\n", m->nodes().size());

    TWData serial_tw, parallel_tw;
    double t_solve_s = time_ms([&] { serial_tw = solve_connection(*m, 2, Exec::Serial); });
    double t_solve_p = time_ms([&] { parallel_tw = solve_connection(*m, 2, Exec::Parallel); });
    bool same = true;
    for (size_t i = 0; i < serial_tw.node.size(); ++i)
        same = same && serial_tw.node[i].scal.value() == parallel_tw.node[i].scal.value();
    std::printf("solve_connection   serial %8.2f ms | parallel %8.2f ms | speedup %.2fx | %s\n",
                t_solve_s, t_solve_p, t_solve_s / t_solve_p, same ? "identical" : "MISMATCH");

    std::vector<double> vals(m->nodes().size());
    for (size_t i = 0; i < vals.size(); ++i)
        vals[i] = serial_tw.node[i].scal.value().real();
    double is = 0, ip = 0;
    double t_int_s = time_ms([&] { is = integrate(*m, vals, Exec::Serial); }, 10);
    double t_int_p = time_ms([&] { ip = integrate(*m, vals, Exec::Parallel); }, 10);
    std::printf("integrate          serial %8.2f ms | parallel %8.2f ms | speedup %.2fx | %s\n",
                t_int_s, t_int_p, t_int_s / t_int_p, is == ip ? "identical" : "MISMATCH");

    std::mt19937_64 rng(17);
    ScalarField base = random_real_field(*m, rng, 0.15);
    ScalarField u = [base](const std::array<double, 4>& x, int ord) {
        return Jet(cplx(1.0), ord) + base(x, ord);
    };
    ConformalLawErrors es{}, ep{};
    double t_conf_s =
        time_ms([&] { es = conformal_law_errors(*m, serial_tw, u, Exec::Serial); }, 1);
    double t_conf_p =
        time_ms([&] { ep = conformal_law_errors(*m, serial_tw, u, Exec::Parallel); }, 1);
    std::printf("conformal_laws     serial %8.2f ms | parallel %8.2f ms | speedup %.2fx | %s\n",
                t_conf_s, t_conf_p, t_conf_s / t_conf_p,
                (es.scalar_law == ep.scalar_law && es.torsion_law == ep.torsion_law)
                    ? "identical"
                    : "MISMATCH");
    return 0;
}
