#pragma once

// Homomorphisms between finitely presented algebras, given by generator
// images. Kernels and preimages go through graph-ideal elimination; image
// membership uses tag-variable rewriting.

#include "sep/algebra.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sep {

// Structural shape certificates carried by maps: Iso for verified
// automorphisms/isomorphisms, LocChain for canonical localizations and their
// compositions with isos. Both present open immersions of spectra.
enum class MapShape { General, Iso, LocChain };

inline MapShape compose_shape(MapShape a, MapShape b)
{
    if (a == MapShape::General || b == MapShape::General) return MapShape::General;
    if (a == MapShape::Iso && b == MapShape::Iso) return MapShape::Iso;
    return MapShape::LocChain;
}

class RingMap {
  public:
    RingMap() = default;

    RingMap(FpAlgebra source, FpAlgebra target, std::vector<Poly> images,
            const Budget& budget = global_budget())
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
    {
        if (images_.size() != source_.ngens())
            throw Error("ring map needs one image per source generator");
        for (auto& f : images_) {
            if (f.nvars() != target_.ngens()) throw Error("variable-list mismatch");
            f = target_.normal_form(f, budget);
        }
        for (const auto& r : source_.relations().gens()) {
            Poly im = r.substitute(images_, target_.ngens());
            if (!target_.is_zero_elem(im, budget))
                throw Error("ring map not well defined: relation " +
                            source_.elem_str(r) + " maps to nonzero element " +
                            target_.elem_str(target_.normal_form(im, budget)));
        }
    }

    static RingMap identity(const FpAlgebra& A)
    {
        std::vector<Poly> imgs;
        for (std::size_t i = 0; i < A.ngens(); ++i) imgs.push_back(A.gen(i));
        RingMap m(A, A, std::move(imgs));
        m.shape_ = MapShape::Iso;
        return m;
    }

    const FpAlgebra& source() const { return source_; }
    const FpAlgebra& target() const { return target_; }
    const std::vector<Poly>& images() const { return images_; }

    MapShape shape() const { return shape_; }
    void set_shape(MapShape s) { shape_ = s; }

    Poly apply(const Poly& f, const Budget& budget = global_budget()) const
    {
        return target_.normal_form(f.substitute(images_, target_.ngens()), budget);
    }

    friend RingMap compose(const RingMap& outer, const RingMap& inner,
                           const Budget& budget = global_budget())
    {
        std::vector<Poly> imgs;
        for (const auto& f : inner.images_) imgs.push_back(outer.apply(f, budget));
        RingMap m(inner.source_, outer.target_, std::move(imgs), budget);
        m.shape_ = compose_shape(outer.shape_, inner.shape_);
        return m;
    }

    // Checks inverse∘map = id and map∘inverse = id on generators and marks
    // both maps as certified isomorphisms.
    static void certify_mutually_inverse(RingMap& f, RingMap& g,
                                         const Budget& budget = global_budget())
    {
        if (!(f.source() == g.target()) || !(f.target() == g.source()))
            throw Error("inverse candidate has mismatched source/target");
        for (std::size_t i = 0; i < f.source().ngens(); ++i) {
            Poly back = g.apply(f.images_[i], budget);
            if (!f.source().elems_equal(back, f.source().gen(i), budget))
                throw Error("twist is not an automorphism: inverse check failed on " +
                            f.source().names()[i]);
        }
        for (std::size_t i = 0; i < g.source().ngens(); ++i) {
            Poly back = f.apply(g.images_[i], budget);
            if (!g.source().elems_equal(back, g.source().gen(i), budget))
                throw Error("twist is not an automorphism: inverse check failed on " +
                            g.source().names()[i]);
        }
        f.shape_ = MapShape::Iso;
        g.shape_ = MapShape::Iso;
    }

  private:
    FpAlgebra source_;
    FpAlgebra target_;
    std::vector<Poly> images_;
    MapShape shape_ = MapShape::General;
};

// --- graph ring --------------------------------------------------------------

namespace detail {

// Combined presentation ring [source gens | target gens] with the graph
// ideal relations(target) + (s_i - image_i). Source names are freshened when
// they collide with target names.
struct GraphRing {
    std::vector<std::string> names;
    std::vector<std::size_t> src; // source gen -> combined index
    std::vector<std::size_t> tgt; // target gen -> combined index
    Ideal ideal;                  // graph ideal
    std::vector<bool> tgt_mask;   // true on target-variable positions
};

inline GraphRing graph_ring(const RingMap& phi)
{
    const auto& S = phi.source();
    const auto& T = phi.target();
    std::set<std::string> taken;
    GraphRing g;
    g.src.resize(S.ngens());
    g.tgt.resize(T.ngens());
    for (std::size_t i = 0; i < T.ngens(); ++i) taken.insert(T.names()[i]);
    for (std::size_t i = 0; i < S.ngens(); ++i) {
        std::string base = S.names()[i];
        if (taken.count(base)) base = base + "@s";
        g.src[i] = g.names.size();
        g.names.push_back(detail::fresh_name(base, taken));
    }
    for (std::size_t i = 0; i < T.ngens(); ++i) {
        g.tgt[i] = g.names.size();
        g.names.push_back(T.names()[i]);
    }
    std::size_t n = g.names.size();
    std::vector<Poly> rels;
    for (const auto& r : T.relations().gens()) rels.push_back(r.remap(n, g.tgt));
    for (std::size_t i = 0; i < S.ngens(); ++i)
        rels.push_back(Poly::variable(n, g.src[i]) - phi.images()[i].remap(n, g.tgt));
    g.ideal = Ideal(g.names, std::move(rels));
    g.tgt_mask.assign(n, false);
    for (std::size_t i : g.tgt) g.tgt_mask[i] = true;
    return g;
}

} // namespace detail

// ker(phi) as an ideal in the source presentation ring: eliminate the target
// variables from the graph ideal. Contains the source relations.
inline Ideal ringmap_kernel(const RingMap& phi, const Budget& budget = global_budget())
{
    auto g = detail::graph_ring(phi);
    std::vector<bool> keep(g.names.size(), true);
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = !g.tgt_mask[i];
    Ideal elim = eliminate(g.ideal, keep, budget);

    std::size_t ns = phi.source().ngens();
    std::vector<std::size_t> back(g.names.size(), 0);
    for (std::size_t i = 0; i < ns; ++i) back[g.src[i]] = i;
    std::vector<Poly> gens;
    for (const auto& p : elim.gens()) gens.push_back(p.remap(ns, back));
    return Ideal(phi.source().names(), std::move(gens));
}

// Rewrite a target element as a polynomial in the generator images, if it
// lies in the image subalgebra: normal form against the graph ideal under an
// order eliminating the target variables; a target-variable-free remainder is
// the rewriting.
inline std::optional<Poly> preimage(const RingMap& phi, const Poly& f,
                                    const Budget& budget = global_budget())
{
    auto g = detail::graph_ring(phi);
    Poly fc = f.remap(g.names.size(), g.tgt);
    Poly nf = g.ideal.normal_form(fc, MonomialOrder::block_mask(g.tgt_mask), budget);
    std::vector<bool> src_only(g.names.size());
    for (std::size_t i = 0; i < src_only.size(); ++i) src_only[i] = !g.tgt_mask[i];
    for (const auto& [m, c] : nf.terms())
        if (!m.supported_on(src_only)) return std::nullopt;
    std::size_t ns = phi.source().ngens();
    std::vector<std::size_t> back(g.names.size(), 0);
    for (std::size_t i = 0; i < ns; ++i) back[g.src[i]] = i;
    return nf.remap(ns, back);
}

inline bool in_image(const RingMap& phi, const Poly& f,
                     const Budget& budget = global_budget())
{
    return preimage(phi, f, budget).has_value();
}

// Every target generator lies in the image subalgebra.
inline bool is_surjective(const RingMap& phi, const Budget& budget = global_budget())
{
    for (std::size_t i = 0; i < phi.target().ngens(); ++i)
        if (!in_image(phi, phi.target().gen(i), budget)) return false;
    return true;
}

// ker(phi) vanishes in the source algebra (the computed kernel ideal always
// contains the source relations).
inline bool is_injective(const RingMap& phi, const Budget& budget = global_budget())
{
    Ideal ker = ringmap_kernel(phi, budget);
    for (const auto& g : ker.gens())
        if (!phi.source().is_zero_elem(g, budget)) return false;
    return true;
}

struct ImageFactorization {
    FpAlgebra image;  // source generators modulo ker(phi)
    RingMap onto;     // source -> image (surjective by construction)
    RingMap embed;    // image -> target (injective by construction)
};

inline ImageFactorization ringmap_image(const RingMap& phi,
                                        const Budget& budget = global_budget())
{
    Ideal ker = ringmap_kernel(phi, budget);
    FpAlgebra C(phi.source().names(), ker);
    std::vector<Poly> id_imgs;
    for (std::size_t i = 0; i < phi.source().ngens(); ++i) id_imgs.push_back(C.gen(i));
    RingMap onto(phi.source(), C, std::move(id_imgs), budget);
    RingMap embed(C, phi.target(), phi.images(), budget);
    return {std::move(C), std::move(onto), std::move(embed)};
}

// phi is an epimorphism of rings iff the multiplication map
// target ⊗_source target -> target is injective.
inline bool is_epimorphism(const RingMap& phi, const Budget& budget = global_budget())
{
    const auto& B = phi.target();
    TensorFactors t = tensor(B, B);
    std::vector<Poly> idrels;
    std::size_t n = t.ring.ngens();
    for (const auto& im : phi.images())
        idrels.push_back(im.remap(n, t.left) - im.remap(n, t.right));
    FpAlgebra BB(t.ring.names(), t.ring.relations().with_extra_gens(std::move(idrels)));

    std::vector<Poly> mult(n, Poly(B.ngens()));
    for (std::size_t i = 0; i < B.ngens(); ++i) {
        mult[t.left[i]] = B.gen(i);
        mult[t.right[i]] = B.gen(i);
    }
    RingMap m(BB, B, std::move(mult), budget);
    Ideal ker = ringmap_kernel(m, budget);
    for (const auto& g : ker.gens())
        if (!BB.is_zero_elem(g, budget)) return false;
    return true;
}

// --- localization ------------------------------------------------------------

struct Localization {
    FpAlgebra ring;
    RingMap canonical; // source -> ring
};

// A_f = A[w]/(f w - 1) with a fresh generator; the registry records f and its
// inverse for later inv(...) resolution.
inline Localization localize(const FpAlgebra& A, const Poly& f,
                             const Budget& budget = global_budget())
{
    if (A.is_zero_elem(f, budget))
        throw Error("cannot invert zero element " + A.elem_str(f));
    std::set<std::string> taken(A.names().begin(), A.names().end());
    std::string wname = detail::fresh_name("inv" + std::to_string(A.inverses().size() + 1),
                                           taken);
    std::vector<std::string> names = A.names();
    names.push_back(wname);
    std::size_t n = names.size();
    std::vector<std::size_t> up(A.ngens());
    for (std::size_t i = 0; i < A.ngens(); ++i) up[i] = i;

    std::vector<Poly> rels;
    for (const auto& r : A.relations().gens()) rels.push_back(r.remap(n, up));
    Poly w = Poly::variable(n, n - 1);
    Poly fl = f.remap(n, up);
    rels.push_back(fl * w - Poly::constant(n, Rational(1)));

    FpAlgebra Af(names, Ideal(names, std::move(rels)));
    if (A.visibly_domain(budget) || A.integral_asserted()) Af.mark_localization_of_domain();
    for (const auto& [g, ginv] : A.inverses())
        Af.register_inverse(g.remap(n, up), ginv.remap(n, up));
    Af.register_inverse(fl, w);

    std::vector<Poly> imgs;
    for (std::size_t i = 0; i < A.ngens(); ++i) imgs.push_back(Af.gen(i));
    RingMap can(A, Af, std::move(imgs), budget);
    can.set_shape(MapShape::LocChain);
    return {std::move(Af), std::move(can)};
}

} // namespace sep
