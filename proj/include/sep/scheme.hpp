#pragma once

// The scheme layer: a scheme glued from two affine charts along a common
// open, the separator existence test, the separator construction, twisted
// recollements, and point-level queries.
//
// Conventions. Charts are Spec A (= U) and Spec B (= V); the common open has
// ring C0 with restriction maps rhoU: A -> C0 and rhoV: B -> C0. The map
// phiUV: A ⊗ B -> C0 sends each factor through its restriction;
// Im(phiUV) = C is the ring of the schematic closure of the diagonal on the
// mixed chart. T is separated iff phiUV is surjective; T admits a separator
// iff C is flat (and of finite type, automatic here) over both charts, and
// the separator is then glued from the charts along Spec C.

#include "sep/flatness.hpp"
#include "sep/oracle.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sep {

enum class TriState { Yes, No, Undecided };

class TwoOpenScheme {
  public:
    // mode: Structural requires both restriction maps to carry a structural
    // open-immersion shape (localization chains, possibly twisted by a
    // certified automorphism); Certified is reserved for constructed
    // separators whose chart maps carry a posteriori certificates.
    enum class ChartMode { Structural, Certified };

    TwoOpenScheme(FpAlgebra A, FpAlgebra B, FpAlgebra C0, RingMap rhoU, RingMap rhoV,
                  ChartMode mode = ChartMode::Structural)
        : A_(std::move(A)), B_(std::move(B)), C0_(std::move(C0)), rhoU_(std::move(rhoU)),
          rhoV_(std::move(rhoV)), mode_(mode)
    {
        if (!(rhoU_.source() == A_) || !(rhoV_.source() == B_) ||
            !(rhoU_.target() == C0_) || !(rhoV_.target() == C0_))
            throw Error("glued scheme: restriction maps do not match the charts");
        if (mode_ == ChartMode::Structural &&
            (rhoU_.shape() == MapShape::General || rhoV_.shape() == MapShape::General))
            throw Error("glued scheme: restriction maps must be localization-shaped");
    }

    const FpAlgebra& chartU() const { return A_; }
    const FpAlgebra& chartV() const { return B_; }
    const FpAlgebra& overlap() const { return C0_; }
    const RingMap& rhoU() const { return rhoU_; }
    const RingMap& rhoV() const { return rhoV_; }
    ChartMode mode() const { return mode_; }

    void assert_integral()
    {
        integral_asserted_ = true;
        A_.assert_integral();
        B_.assert_integral();
        C0_.assert_integral();
    }
    bool integral_asserted() const { return integral_asserted_; }

    TwoOpenScheme swapped() const
    {
        TwoOpenScheme s(B_, A_, C0_, rhoV_, rhoU_, mode_);
        s.integral_asserted_ = integral_asserted_;
        return s;
    }

  private:
    FpAlgebra A_, B_, C0_;
    RingMap rhoU_, rhoV_;
    ChartMode mode_;
    bool integral_asserted_ = false;
};

// --- structural validation for user-declared gluings ---------------------------

// Checks that (source, target, images) presents a canonical localization
// chain: images are distinct target generators, and every remaining target
// relation is either a lifted source relation or a Rabinowitsch row f*w - 1
// for exactly one fresh generator w. Returns the (f, w) registry on success.
inline std::optional<std::vector<std::pair<Poly, Poly>>>
localization_chain_registry(const FpAlgebra& source, const FpAlgebra& target,
                            const std::vector<Poly>& images,
                            const Budget& budget = global_budget())
{
    std::size_t nt = target.ngens();
    std::vector<std::optional<std::size_t>> back(nt); // target var -> source var
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto& f = images[i];
        if (f.terms().size() != 1 || f.terms()[0].second != 1) return std::nullopt;
        const Monomial& m = f.terms()[0].first;
        std::size_t nz = 0, which = 0;
        for (std::size_t k = 0; k < nt; ++k)
            if (m.exp(k) != 0) {
                nz += m.exp(k);
                which = k;
            }
        if (nz != 1 || back[which]) return std::nullopt;
        back[which] = i;
    }
    std::vector<bool> is_extra(nt, false);
    std::vector<std::size_t> extras;
    for (std::size_t k = 0; k < nt; ++k)
        if (!back[k]) {
            is_extra[k] = true;
            extras.push_back(k);
        }

    std::vector<std::size_t> down(nt, 0);
    for (std::size_t k = 0; k < nt; ++k)
        if (back[k]) down[k] = *back[k];

    std::vector<std::pair<Poly, Poly>> registry;
    std::vector<bool> seen(nt, false);
    for (const auto& r : target.relations().gens()) {
        std::vector<std::size_t> touched;
        std::uint32_t maxdeg = 0;
        for (std::size_t k : extras) {
            std::uint32_t d = 0;
            for (const auto& [m, c] : r.terms()) d = std::max(d, m.exp(k));
            if (d) touched.push_back(k);
            maxdeg = std::max(maxdeg, d);
        }
        if (touched.empty()) {
            // must be a consequence of the source relations
            bool ok = true;
            for (const auto& [m, c] : r.terms())
                for (std::size_t k : extras) ok = ok && m.exp(k) == 0;
            if (!ok) return std::nullopt;
            if (!source.is_zero_elem(r.remap(source.ngens(), down), budget))
                return std::nullopt;
            continue;
        }
        if (touched.size() != 1 || maxdeg != 1) return std::nullopt;
        std::size_t w = touched[0];
        if (seen[w]) return std::nullopt;
        // split r = s*w + c with s, c free of w
        Poly s(nt), c(nt);
        for (const auto& [m, k] : r.terms()) {
            if (m.exp(w) == 1) {
                Monomial mm = m;
                mm.set_exp(w, 0);
                s = s + Poly::term(nt, mm, k);
            } else {
                c = c + Poly::term(nt, m, k);
            }
        }
        if (!c.is_constant()) return std::nullopt;
        Rational cv = c.constant_value();
        if (cv == 0) return std::nullopt;
        // normalize to f*w - 1
        Poly f = s * (Rational(-1) / cv);
        registry.emplace_back(std::move(f), Poly::variable(nt, w));
        seen[w] = true;
    }
    for (std::size_t k : extras)
        if (!seen[k]) return std::nullopt;
    return registry;
}

// Builds a glued scheme from user-declared data, validating that both
// restriction maps are canonical localization chains.
inline TwoOpenScheme glue_scheme(const FpAlgebra& A, const FpAlgebra& B, FpAlgebra C0,
                                 const std::vector<Poly>& rhoU_images,
                                 const std::vector<Poly>& rhoV_images,
                                 const Budget& budget = global_budget())
{
    auto regU = localization_chain_registry(A, C0, rhoU_images, budget);
    if (!regU)
        throw Error("rhoU is not a canonical localization chain onto the overlap ring");
    auto regV = localization_chain_registry(B, C0, rhoV_images, budget);
    if (!regV)
        throw Error("rhoV is not a canonical localization chain onto the overlap ring");
    for (auto& [f, w] : *regU) C0.register_inverse(f, w);
    for (auto& [f, w] : *regV) {
        bool dup = false;
        for (const auto& [g, gw] : C0.inverses()) dup = dup || (g == f && gw == w);
        if (!dup) C0.register_inverse(f, w);
    }
    if (A.integral_certified(budget) && B.integral_certified(budget))
        C0.mark_localization_of_domain();
    RingMap rhoU(A, C0, rhoU_images, budget);
    rhoU.set_shape(MapShape::LocChain);
    RingMap rhoV(B, C0, rhoV_images, budget);
    rhoV.set_shape(MapShape::LocChain);
    return TwoOpenScheme(A, B, std::move(C0), std::move(rhoU), std::move(rhoV));
}

// --- twisted recollement --------------------------------------------------------

struct TwistSpec {
    FpAlgebra U;
    std::vector<Poly> invert;                        // elements of U defining U0
    std::vector<std::pair<std::size_t, Poly>> tau;   // generator index -> image in Gamma(U0)
    // images are given on the generators of U as elements of Gamma(U0);
    // the inverses introduced by localization are transported automatically.
};

inline std::vector<std::size_t> identity_perm(std::size_t n)
{
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

struct ChainedLocalization {
    FpAlgebra ring;
    RingMap canonical;
};

inline ChainedLocalization localize_chain(const FpAlgebra& A, const std::vector<Poly>& elems,
                                          const Budget& budget = global_budget())
{
    FpAlgebra C0 = A;
    RingMap can = RingMap::identity(A);
    for (const auto& f : elems) {
        auto loc = localize(C0, can.apply(f, budget), budget);
        can = compose(loc.canonical, can, budget);
        C0 = loc.ring;
    }
    return {std::move(C0), std::move(can)};
}

// Glue two copies of U along U0 = Spec(Gamma(U)[1/f1...1/fk]), one inclusion
// twisted by tau. The U-side restriction carries the twist, so the first
// tensor factor restricts through tau, matching phi(a ⊗ b) = tau(a)·b.
inline TwoOpenScheme build_twisted(const TwistSpec& spec,
                                   const Budget& budget = global_budget())
{
    const FpAlgebra& A = spec.U;
    auto chain = localize_chain(A, spec.invert, budget);
    FpAlgebra C0 = std::move(chain.ring);
    RingMap can = std::move(chain.canonical);

    // Full image list for tau on Gamma(U0): declared images on the U
    // generators, identity elsewhere, then each localization inverse w of f
    // transported to the declared inverse of tau(f).
    std::size_t n = C0.ngens();
    std::vector<Poly> tau_images;
    for (std::size_t i = 0; i < n; ++i) tau_images.push_back(C0.gen(i));
    for (const auto& [idx, img] : spec.tau) {
        if (idx >= A.ngens()) throw Error("twist image for unknown generator");
        // declared on U generators, which are the leading generators of C0
        tau_images[idx] = img;
    }
    for (const auto& [f, w] : C0.inverses()) {
        Poly tf = C0.normal_form(f.substitute(tau_images, n), budget);
        auto inv = C0.resolve_inverse(tf, budget);
        if (!inv)
            throw Error("twist is not an automorphism: image of an inverted element "
                        "is not invertible");
        std::size_t widx = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (w == C0.gen(k)) widx = k;
        tau_images[widx] = *inv;
    }
    RingMap tau(C0, C0, tau_images, budget);

    // Derive the inverse by rewriting each generator through the images.
    std::vector<Poly> inv_images;
    for (std::size_t i = 0; i < n; ++i) {
        auto pre = preimage(tau, C0.gen(i), budget);
        if (!pre)
            throw Error("twist is not an automorphism: generator " + C0.names()[i] +
                        " has no preimage");
        inv_images.push_back(*pre);
    }
    RingMap tau_inv(C0, C0, inv_images, budget);
    RingMap::certify_mutually_inverse(tau, tau_inv, budget);

    RingMap rhoU = compose(tau, can, budget); // twisted inclusion
    RingMap rhoV = can;
    TwoOpenScheme T(A, A, C0, std::move(rhoU), std::move(rhoV));
    if (A.integral_certified(budget)) T.assert_integral();
    return T;
}

// --- diagonal closure -----------------------------------------------------------

struct DiagonalClosure {
    FpAlgebra C;      // Im(phiUV), the ring of the mixed-chart closure
    RingMap fromU;    // A -> C
    RingMap fromV;    // B -> C
    RingMap intoC0;   // C -> C0, injective
    RingMap phiUV;    // A ⊗ B -> C0
    TensorFactors tensor_info;
};

namespace detail {

struct PhiUV {
    TensorFactors factors;
    RingMap phi;
};

// phiUV on a presentation of A ⊗ B that identifies generators with equal
// restrictions up front (a quotient of the full tensor by part of the
// kernel; the image and the induced chart maps are unchanged).
inline PhiUV phi_uv(const TwoOpenScheme& T, const Budget& budget = global_budget())
{
    const auto& A = T.chartU();
    const auto& B = T.chartV();
    std::vector<std::pair<std::size_t, std::size_t>> shared;
    for (std::size_t i = 0; i < A.ngens(); ++i)
        for (std::size_t j = 0; j < B.ngens(); ++j)
            if (A.names()[i] == B.names()[j] &&
                T.overlap().elems_equal(T.rhoU().images()[i], T.rhoV().images()[j], budget))
                shared.emplace_back(i, j);
    TensorFactors tf = tensor(A, B, shared);
    std::vector<Poly> images(tf.ring.ngens(), Poly(T.overlap().ngens()));
    for (std::size_t i = 0; i < A.ngens(); ++i) images[tf.left[i]] = T.rhoU().images()[i];
    for (std::size_t j = 0; j < B.ngens(); ++j) images[tf.right[j]] = T.rhoV().images()[j];
    RingMap phi(tf.ring, T.overlap(), std::move(images), budget);
    return {std::move(tf), std::move(phi)};
}

} // namespace detail

inline DiagonalClosure diagonal_closure(const TwoOpenScheme& T,
                                        const Budget& budget = global_budget())
{
    auto [tf, phi] = detail::phi_uv(T, budget);
    auto im = ringmap_image(phi, budget);

    const auto& A = T.chartU();
    const auto& B = T.chartV();
    std::vector<Poly> fromU_images, fromV_images;
    for (std::size_t i = 0; i < A.ngens(); ++i) fromU_images.push_back(im.image.gen(tf.left[i]));
    for (std::size_t j = 0; j < B.ngens(); ++j)
        fromV_images.push_back(im.image.gen(tf.right[j]));
    RingMap fromU(A, im.image, std::move(fromU_images), budget);
    RingMap fromV(B, im.image, std::move(fromV_images), budget);

    // invariant: the chart maps composed into C0 are the restrictions
    for (std::size_t i = 0; i < A.ngens(); ++i)
        if (!T.overlap().elems_equal(im.embed.apply(fromU.images()[i], budget),
                                     T.rhoU().images()[i], budget))
            throw Error("internal invariant breach: closure chart map (U side)");
    for (std::size_t j = 0; j < B.ngens(); ++j)
        if (!T.overlap().elems_equal(im.embed.apply(fromV.images()[j], budget),
                                     T.rhoV().images()[j], budget))
            throw Error("internal invariant breach: closure chart map (V side)");

    return {im.image,        std::move(fromU), std::move(fromV),
            std::move(im.embed), std::move(phi),   std::move(tf)};
}

// T separated iff phiUV is surjective.
inline bool is_separated(const TwoOpenScheme& T, const Budget& budget = global_budget())
{
    return is_surjective(detail::phi_uv(T, budget).phi, budget);
}

// Schematic dominance of the diagonal, certified either by the integrality
// assertion or by structural domain certificates on both charts together
// with a nonempty overlap. Never guesses: uncertified cases are Undecided.
inline TriState diagonal_dominant(const TwoOpenScheme& T,
                                  const Budget& budget = global_budget())
{
    try {
        if (T.overlap().is_zero_ring(budget)) return TriState::Undecided;
        if (T.integral_asserted()) return TriState::Yes;
        if (T.chartU().integral_certified(budget) && T.chartV().integral_certified(budget))
            return TriState::Yes;
        return TriState::Undecided;
    } catch (const BudgetError&) {
        return TriState::Undecided;
    }
}

// --- separator ------------------------------------------------------------------

struct SidedFailure {
    char side; // 'U' or 'V'
    FlatVerdict verdict;
    std::optional<Ideal> witness_in_C; // the witness pushed into the closure ring
};

struct SeparatorReport {
    enum class Verdict { AlreadySeparated, SeparatorExists, NoSeparator, Undecided };
    Verdict verdict = Verdict::Undecided;
    std::optional<DiagonalClosure> closure;
    std::optional<TwoOpenScheme> separator; // E, when it exists
    std::optional<FlatVerdict> flatU, flatV;
    std::vector<SidedFailure> failures; // NoSeparator: all failing sides
    TriState dominance = TriState::Undecided;
    std::string finite_type_note;
    std::string reason; // Undecided only
};

inline TwoOpenScheme build_separator(const TwoOpenScheme& T, const DiagonalClosure& D,
                                     const Budget& budget = global_budget());

inline SeparatorReport separator_check(const TwoOpenScheme& T,
                                       const Budget& budget = global_budget())
{
    SeparatorReport rep;
    rep.dominance = diagonal_dominant(T, budget);
    try {
        if (is_separated(T, budget)) {
            rep.verdict = SeparatorReport::Verdict::AlreadySeparated;
            return rep;
        }
        rep.closure = diagonal_closure(T, budget);
        rep.finite_type_note =
            "finite type over each chart: the closure ring is generated by the images "
            "of the other chart's finitely many generators";

        auto push_failure = [&](char side, const FlatVerdict& v, const RingMap& chart_map) {
            SidedFailure f{side, v, std::nullopt};
            // A hypersurface witness (s, t) is meaningful inside the closure
            // ring; keep the raw substituted generators so the pair shape
            // survives. Fitting witnesses live over the chart ring.
            if (v.witness && v.method == FlatMethod::Hypersurface) {
                std::vector<Poly> gens;
                for (const auto& g : v.witness->gens())
                    gens.push_back(
                        g.substitute(chart_map.images(), rep.closure->C.ngens()));
                f.witness_in_C = Ideal(rep.closure->C.names(), std::move(gens));
            }
            rep.failures.push_back(std::move(f));
        };

        rep.flatU = flat_of_map(rep.closure->fromU, budget);
        rep.flatV = flat_of_map(rep.closure->fromV, budget);

        // A non-flat side refutes existence outright (the forward implication
        // of the criterion needs no dominance hypothesis).
        if (rep.flatU->status == FlatStatus::NotFlat)
            push_failure('U', *rep.flatU, rep.closure->fromU);
        if (rep.flatV->status == FlatStatus::NotFlat)
            push_failure('V', *rep.flatV, rep.closure->fromV);
        if (!rep.failures.empty()) {
            rep.verdict = SeparatorReport::Verdict::NoSeparator;
            return rep;
        }
        if (rep.flatU->status == FlatStatus::Undecided ||
            rep.flatV->status == FlatStatus::Undecided) {
            rep.verdict = SeparatorReport::Verdict::Undecided;
            rep.reason = rep.flatU->status == FlatStatus::Undecided ? rep.flatU->detail
                                                                    : rep.flatV->detail;
            return rep;
        }
        // Both sides flat: the positive direction needs certified dominance.
        if (rep.dominance != TriState::Yes) {
            rep.verdict = SeparatorReport::Verdict::Undecided;
            rep.reason = "both chart maps are flat, but schematic dominance of the "
                         "diagonal is not certified";
            return rep;
        }
        rep.separator = build_separator(T, *rep.closure, budget);
        rep.verdict = SeparatorReport::Verdict::SeparatorExists;
        return rep;
    } catch (const BudgetError& e) {
        rep.verdict = SeparatorReport::Verdict::Undecided;
        rep.reason = e.what();
        return rep;
    }
}

// Glue the two charts along Spec C. Certifies a posteriori that both chart
// maps are flat epimorphisms of finite type (the open-immersion certificate)
// and that the result is separated; a failure here is an invariant breach.
inline TwoOpenScheme build_separator(const TwoOpenScheme& T, const DiagonalClosure& D,
                                     const Budget& budget)
{
    TwoOpenScheme E(T.chartU(), T.chartV(), D.C, D.fromU, D.fromV,
                    TwoOpenScheme::ChartMode::Certified);
    if (!is_injective(D.intoC0, budget))
        throw Error("internal invariant breach: closure ring does not embed in the overlap");
    if (!is_epimorphism(D.fromU, budget) || !is_epimorphism(D.fromV, budget))
        throw Error("internal invariant breach: a separator chart map is not an epimorphism");
    if (!is_separated(E, budget))
        throw Error("internal invariant breach: constructed separator is not separated");
    return E;
}

// --- point queries ----------------------------------------------------------------

struct PointRef {
    char chart; // 'U' or 'V'
    std::vector<Poly> ideal_gens; // in the chart presentation ring
};

namespace detail {

// Rational point: the chart ring modulo the ideal is the coefficient field.
inline void check_rational_point(const FpAlgebra& ring, const PointRef& p,
                                 const Budget& budget = global_budget())
{
    Ideal m = ring.relations().with_extra_gens(p.ideal_gens);
    if (m.is_unit(budget)) throw Error("point ideal is the unit ideal");
    for (std::size_t i = 0; i < ring.ngens(); ++i) {
        Poly nf = m.normal_form(ring.gen(i), MonomialOrder::grevlex(), budget);
        if (!nf.is_constant())
            throw Error("point is not a rational maximal ideal: generator " +
                        ring.names()[i] + " is not constant modulo the ideal");
    }
}

} // namespace detail

// Two rational points are apparented iff some point of the diagonal closure
// lies over the pair, i.e. the ideal generated by their images in C is not
// the unit ideal.
inline bool apparented(const TwoOpenScheme& T, const PointRef& x, const PointRef& y,
                       const Budget& budget = global_budget())
{
    if (x.chart != 'U' || y.chart != 'V')
        throw Error("apparented expects the first point on U and the second on V");
    if (diagonal_dominant(T, budget) != TriState::Yes)
        throw Error("apparented requires certified integrality of the glued scheme");
    detail::check_rational_point(T.chartU(), x, budget);
    detail::check_rational_point(T.chartV(), y, budget);

    DiagonalClosure D = diagonal_closure(T, budget);
    std::vector<Poly> gens;
    for (const auto& g : x.ideal_gens) gens.push_back(D.fromU.apply(g, budget));
    for (const auto& g : y.ideal_gens) gens.push_back(D.fromV.apply(g, budget));
    Ideal Q = D.C.relations().with_extra_gens(std::move(gens));
    return !Q.is_unit(budget);
}

enum class IdentifyResult { Identified, Distinct, NoSeparator, Undecided };

// In the separator, two points are identified exactly when they are
// apparented; without a separator the question is passed through.
inline IdentifyResult identified_in_separator(const TwoOpenScheme& T, const PointRef& x,
                                              const PointRef& y,
                                              const Budget& budget = global_budget())
{
    SeparatorReport rep = separator_check(T, budget);
    switch (rep.verdict) {
    case SeparatorReport::Verdict::NoSeparator: return IdentifyResult::NoSeparator;
    case SeparatorReport::Verdict::Undecided: return IdentifyResult::Undecided;
    case SeparatorReport::Verdict::AlreadySeparated:
    case SeparatorReport::Verdict::SeparatorExists:
        return apparented(T, x, y, budget) ? IdentifyResult::Identified
                                           : IdentifyResult::Distinct;
    }
    return IdentifyResult::Undecided;
}

} // namespace sep
