// Maintenance tool: re-derives the presentation of the rank-3 circular cover
// B of the nodal cubic that is frozen into corpus/ex72.sep, re-checks the
// expected facts, and prints integer-scaled relations ready for the manifest.

#include "sep/expr.hpp"
#include "sep/flatness.hpp"
#include "sep/oracle.hpp"

#include <chrono>
#include <iostream>

using namespace sep;

static double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int main()
{
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> a3 = {"t", "e1", "e2"};
    FpAlgebra A3bar(a3, Ideal(a3, {parse_poly("e1^2 - e1", a3), parse_poly("e2^2 - e2", a3),
                                   parse_poly("e1*e2", a3)}));

    std::vector<std::string> b4 = {"u", "v", "y", "z"};
    FpAlgebra Bfree = FpAlgebra::polynomial_ring(b4);

    auto img_u = parse_poly("t^2 - 1", a3);
    auto img_v = parse_poly("t^3 - t", a3);
    auto img_y = parse_poly("(1/2)*(1 + t)*e1 + (1/2)*(1 - t)*e2", a3);
    auto img_z = parse_poly("(1/2)*(1 + t)*e2 + (1/2)*(1 - t)*(1 - e1 - e2)", a3);

    RingMap psi_free(Bfree, A3bar, {img_u, img_v, img_y, img_z});
    Ideal JB = ringmap_kernel(psi_free);
    std::cout << "[" << seconds_since(t0) << "s] kernel computed, "
              << JB.groebner(MonomialOrder::grevlex()).size() << " reduced generators\n";
    for (const auto& g : JB.groebner(MonomialOrder::grevlex()))
        std::cout << "  rel: " << g.str(b4) << "\n";

    // integer-scaled forms for the corpus manifest
    for (const auto& g : JB.groebner(MonomialOrder::grevlex())) {
        BigInt scale = 1;
        for (const auto& [m, c] : g.terms()) scale = lcm(scale, denominator(c));
        std::cout << "  manifest: " << (g * Rational(scale)).str(b4) << "\n";
    }

    // hand-derived members of the kernel
    for (const char* r : {"u^3 + u^2 - v^2", "4*y^2 + 4*y*z + 4*z^2 - 4*y - 4*z - u",
                          "(2*y - 1)*(2*z - 1)*(2*(1 - y - z) - 1) - (u + 1)"}) {
        bool in = JB.contains(parse_poly(r, b4));
        std::cout << "  check " << r << " in kernel: " << (in ? "yes" : "NO") << "\n";
    }

    FpAlgebra B(b4, JB);
    B.assert_connected();

    std::vector<std::string> a2 = {"u", "v"};
    FpAlgebra A(a2, Ideal(a2, {parse_poly("u^3 + u^2 - v^2", a2)}));
    A.assert_integral();

    RingMap inc(A, B, {parse_poly("u", b4), parse_poly("v", b4)});
    std::cout << "[" << seconds_since(t0) << "s] inc built\n";

    auto w = module_finite_witness(inc);
    if (!w) {
        std::cout << "NO module-finiteness witness for inc!\n";
        return 1;
    }
    std::cout << "[" << seconds_since(t0) << "s] witness degrees:";
    for (auto d : w->degrees) std::cout << " " << d;
    std::cout << "\n";

    auto gens = choose_module_generators(inc, *w);
    std::cout << "[" << seconds_since(t0) << "s] module generators (" << gens.size() << "):\n";
    for (const auto& g : gens) std::cout << "  gen: " << g.str(b4) << "\n";

    auto M = module_presentation(inc, gens);
    std::cout << "[" << seconds_since(t0) << "s] presentation rows: " << M.rows.size() << "\n";

    auto flat = flat_finite(M, true);
    std::cout << "[" << seconds_since(t0) << "s] flat_finite(B over A): "
              << (flat.status == FlatStatus::Flat
                      ? "Flat rank " + std::to_string(*flat.rank)
                      : flat.status == FlatStatus::NotFlat ? "NotFlat" : "Undecided")
              << "  (" << flat.detail << ")\n";

    auto et = is_etale(inc);
    std::cout << "[" << seconds_since(t0) << "s] is_etale(inc): "
              << (et.status == EtaleStatus::Etale
                      ? "Etale"
                      : et.status == EtaleStatus::NotEtale ? "NotEtale" : "Undecided")
              << "  (" << et.detail << ")\n";

    // psi: B -> A3bar and its flatness
    RingMap psi(B, A3bar, {img_u, img_v, img_y, img_z});
    auto flat_psi = flat_of_map(psi);
    std::cout << "[" << seconds_since(t0) << "s] flat(psi: B -> A3bar): "
              << (flat_psi.status == FlatStatus::NotFlat
                      ? "NotFlat"
                      : flat_psi.status == FlatStatus::Flat ? "Flat" : "Undecided")
              << "  (" << flat_psi.detail << ")\n";
    if (flat_psi.witness) {
        std::cout << "  witness:";
        for (const auto& g : flat_psi.witness->gens()) std::cout << " [" << g.str(b4) << "]";
        std::cout << "\n";
    }

    // the twisted restriction-product map on B ⊗ B
    auto tf = tensor(B, B);
    std::cout << "BB names:";
    for (const auto& n : tf.ring.names()) std::cout << " " << n;
    std::cout << "\n";
    RingMap swap_e(A3bar, A3bar,
                   {parse_poly("t", a3), parse_poly("e2", a3), parse_poly("e1", a3)});
    std::vector<Poly> phi_imgs(tf.ring.ngens(), Poly(3));
    std::vector<Poly> psimg = {img_u, img_v, img_y, img_z};
    for (std::size_t i = 0; i < 4; ++i) {
        phi_imgs[tf.left[i]] = swap_e.apply(psimg[i]); // twisted factor
        phi_imgs[tf.right[i]] = psimg[i];
    }
    RingMap phi(tf.ring, A3bar, phi_imgs);
    std::cout << "[" << seconds_since(t0) << "s] phi built\n";

    bool surj = is_surjective(phi);
    std::cout << "[" << seconds_since(t0) << "s] is_surjective(phi): " << (surj ? "yes" : "NO")
              << "\n";

    for (const char* m : {"e1", "e2", "1 - e1 - e2", "t*e1", "t*e2", "t*(1 - e1 - e2)"}) {
        bool exact = in_image(phi, parse_poly(m, a3));
        auto tm = truncated_membership(A3bar, parse_poly(m, a3), phi.images(), 4, 101);
        std::cout << "  membership " << m << ": exact=" << (exact ? "yes" : "NO")
                  << " mod101=" << (tm == Membership::Yes ? "yes" : "no-within-bound") << "\n";
    }
    std::cout << "[" << seconds_since(t0) << "s] done\n";
    return 0;
}
