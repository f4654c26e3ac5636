// Microbenchmark comparing the OpenMP kernels against their serial
// references on representative workloads: truncated Frobenius powers and the
// graded rank profile. Not a test; numbers go to stdout.

#include <chrono>
#include <iostream>

#include "fsig/frobenius.hpp"
#include "fsig/graded_blocks.hpp"
#include "fsig/parse.hpp"
#include "fsig/power.hpp"

using namespace fsig;

namespace {

template <typename F> double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& name, double serial, double parallel, double reference) {
    std::cout << name << "\n";
    std::cout << "  serial kernel    " << serial << " ms\n";
    std::cout << "  parallel kernel  " << parallel << " ms\n";
    if (reference >= 0) std::cout << "  reference        " << reference << " ms\n";
    std::cout << "\n";
}

} // namespace

int main() {
    std::cout << "fsiglab kernel benchmark\n\n";

    { // Truncated power of the (2,3,5) relation at p = 13, e = 2.
        auto amb = make_ambient({"x", "y", "z"}, {15, 10, 6});
        PolyZ gz = parse_poly("x^2 + y^3 + z^5", amb);
        Poly g = reduce_mod_p(gz, 13);
        const std::uint64_t q = 13 * 13;
        Poly a = Poly::zero(amb, g.field()), b = a, c = a;
        double ts = time_ms([&] { a = power_truncated(g, q - 1, q, false); });
        double tp = time_ms([&] { b = power_truncated(g, q - 1, q, true); });
        double tr = time_ms([&] { c = power_truncated_reference(g, q - 1, q); });
        if (!(a == b) || !(a == c)) {
            std::cerr << "kernel mismatch in power_truncated\n";
            return 1;
        }
        row("power_truncated (2,3,5), p=13, e=2", ts, tp, tr);
    }

    { // Larger power where only the multinomial path is viable.
        auto amb = make_ambient({"x", "y", "z"}, {15, 10, 6});
        PolyZ gz = parse_poly("x^2 + y^3 + z^5", amb);
        Poly g = reduce_mod_p(gz, 31);
        const std::uint64_t q = 31ull * 31 * 31;
        Poly a = Poly::zero(amb, g.field()), b = a;
        double ts = time_ms([&] { a = power_truncated(g, q - 1, q, false); });
        double tp = time_ms([&] { b = power_truncated(g, q - 1, q, true); });
        if (!(a == b)) {
            std::cerr << "kernel mismatch in power_truncated (large)\n";
            return 1;
        }
        row("power_truncated (2,3,5), p=31, e=3", ts, tp, -1);
    }

    { // Graded rank profile for the A_1 relation at p = 11, e = 2.
        auto amb = make_ambient({"x", "y", "z"});
        PolyZ gz = parse_poly("x*y - z^2", amb);
        Poly g = reduce_mod_p(gz, 11);
        const std::uint64_t q = 121;
        Poly h = power_truncated(g, q - 1, q);
        GradedBlocks blocks = mult_operator(h, q);
        RankProfile rs, rp;
        double ts = time_ms([&] { rs = graded_rank_profile(blocks, false); });
        double tp = time_ms([&] { rp = graded_rank_profile(blocks, true); });
        if (rs.total_rank != rp.total_rank) {
            std::cerr << "kernel mismatch in graded_rank_profile\n";
            return 1;
        }
        row("graded_rank_profile A_1, p=11, e=2 (rank " + std::to_string(rs.total_rank) + ")", ts,
            tp, -1);
    }

    { // Same profile at p = 7 with the dense serial reference in the mix.
        auto amb = make_ambient({"x", "y", "z"});
        PolyZ gz = parse_poly("x*y - z^2", amb);
        Poly g = reduce_mod_p(gz, 7);
        const std::uint64_t q = 49;
        Poly h = power_truncated(g, q - 1, q);
        GradedBlocks blocks = mult_operator(h, q);
        RankProfile rs, rp, rr;
        double ts = time_ms([&] { rs = graded_rank_profile(blocks, false); });
        double tp = time_ms([&] { rp = graded_rank_profile(blocks, true); });
        double tr = time_ms([&] { rr = graded_rank_profile_reference(blocks); });
        if (rs.total_rank != rp.total_rank || rs.total_rank != rr.total_rank) {
            std::cerr << "kernel mismatch in graded_rank_profile (p=7)\n";
            return 1;
        }
        row("graded_rank_profile A_1, p=7, e=2 (rank " + std::to_string(rs.total_rank) + ")", ts,
            tp, tr);
    }

    return 0;
}
