#include "cat2/pushout.hpp"

#include <algorithm>
#include <map>

#include "rewrite.hpp"

namespace cat2 {

namespace {

using detail::Rewriter;
using detail::Word;

constexpr char kFromA2 = 0, kFromB = 1, kMixed = 2;

std::vector<int> inverse(const std::vector<int>& f, int n) {
    std::vector<int> inv(n, -1);
    for (int k = 0; k < static_cast<int>(f.size()); ++k) inv[f[k]] = k;
    return inv;
}

void require_sieve(const TwoFunctor& i, const TwoFunctor& u) {
    if (!sieve2_analyze(i).is_sieve) throw NotASieve("pushout needs a sieve");
    if (u.src->n0() != i.src->n0() || u.src->n1() != i.src->n1() || u.src->n2() != i.src->n2())
        throw ShapeError("u and i have different sources");
}

// Recompute the comparison table and drop explicit composition tables when
// every pair of parallel 1-cells carries at most one 2-cell.
void settle_enrichment(TwoCat& c) {
    if (!is_poset_enriched(c)) return;
    c.between.clear();
    for (int a = 0; a < c.n2(); ++a) c.between[pair_key(c.two[a].src, c.two[a].tgt)] = a;
    c.vcomp.clear();
    c.hcomp.clear();
    c.poset_enriched = true;
    c.finalize();
}

void require_valid(const TwoCat& c) {
    auto rep = validate_twocat(c, 3);
    if (!rep.empty()) throw ShapeError("constructed pushout is not a 2-category: " + rep.front());
}

// ---------------------------------------------------------------- general sieve pushout

class GeneralPushout {
public:
    GeneralPushout(const TwoFunctor& i, const TwoFunctor& u, const PushoutLimits& lim)
        : i_(i), u_(u), A_(*i.src), B_(*i.tgt), A2_(*u.tgt), lim_(lim) {
        ia0_ = inverse(i.obj, B_.n0());
        ia1_ = inverse(i.one, B_.n1());
        ia2_ = inverse(i.two, B_.n2());
    }

    CocartSquare build() {
        objects();
        triplets1();
        generators();
        relations();
        normal_forms();
        assemble();
        return std::move(sq_);
    }

private:
    struct Hom {
        int x, y;
        std::vector<int> obj_classes;  // triplet class per local object
        std::map<int, int> local_obj;  // triplet class -> local object
        std::vector<int> letter_src, letter_tgt;
        std::vector<int> letter_gen;   // representative generator
        std::vector<std::pair<Word, Word>> equations;
        std::unique_ptr<Rewriter> rw;
        std::vector<std::pair<int, Word>> cells;  // (local object, normal word)
        std::map<std::pair<int, Word>, int> cell_index;
        int first_cell = 0;
        HomPresentation pres;
    };

    bool in_a(int b_obj) const { return ia0_[b_obj] >= 0; }

    void objects() {
        for (int x = 0; x < A2_.n0(); ++x) P_.objects.push_back(A2_.objects[x]);
        obj_b_.assign(B_.n0(), -1);
        for (int y = 0; y < B_.n0(); ++y)
            if (!in_a(y)) {
                obj_b_[y] = P_.n0();
                P_.objects.push_back(B_.objects[y]);
            }
    }

    int triplet1(int f2, int a, int f1) const {
        auto it = t1_index_.find({f2, a, f1});
        return it == t1_index_.end() ? -1 : it->second;
    }

    void triplets1() {
        for (int a = 0; a < A_.n0(); ++a)
            for (int f2 : B_.out1[i_.obj[a]]) {
                if (in_a(B_.one[f2].tgt)) continue;
                for (int f1 : A2_.in1[u_.obj[a]]) {
                    t1_index_[{f2, a, f1}] = static_cast<int>(t1_.size());
                    t1_.push_back({f2, a, f1});
                }
            }
        UnionFind uf(static_cast<int>(t1_.size()));
        for (int h = 0; h < A_.n1(); ++h) {
            int a = A_.one[h].src, a2 = A_.one[h].tgt;
            for (int f2 : B_.out1[i_.obj[a2]]) {
                if (in_a(B_.one[f2].tgt)) continue;
                for (int f1 : A2_.in1[u_.obj[a]])
                    uf.unite(triplet1(B_.compose(f2, i_.one[h]), a, f1), triplet1(f2, a2, A2_.compose(u_.one[h], f1)));
            }
        }
        t1_class_.resize(t1_.size());
        for (int t = 0; t < static_cast<int>(t1_.size()); ++t) t1_class_[t] = uf.find(t);
    }

    int gen(int a2, int a, int a1) const {
        auto it = gen_index_.find({a2, a, a1});
        if (it == gen_index_.end()) throw ShapeError("generator outside the presentation");
        return it->second;
    }

    int hom_of(int x, int y) {
        auto key = std::make_pair(x, y);
        auto it = hom_index_.find(key);
        if (it != hom_index_.end()) return it->second;
        int h = static_cast<int>(homs_.size());
        homs_.push_back(std::make_unique<Hom>());
        homs_.back()->x = x;
        homs_.back()->y = y;
        hom_index_[key] = h;
        return h;
    }

    int local_object(Hom& h, int t1) {
        int cls = t1_class_[t1];
        auto it = h.local_obj.find(cls);
        if (it != h.local_obj.end()) return it->second;
        int o = static_cast<int>(h.obj_classes.size());
        h.obj_classes.push_back(cls);
        h.local_obj[cls] = o;
        return o;
    }

    void generators() {
        // objects of each mixed hom first, so that ordering follows triplet order
        for (int t = 0; t < static_cast<int>(t1_.size()); ++t) {
            auto& tr = t1_[t];
            Hom& h = *homs_[hom_of(A2_.one[tr.first].src, obj_b_[B_.one[tr.second].tgt])];
            local_object(h, t);
        }
        for (int a = 0; a < A_.n0(); ++a)
            for (int f2 : B_.out1[i_.obj[a]]) {
                if (in_a(B_.one[f2].tgt)) continue;
                for (int a2 : B_.out2[f2])
                    for (int f1 : A2_.in1[u_.obj[a]])
                        for (int a1 : A2_.out2[f1]) {
                            gen_index_[{a2, a, a1}] = static_cast<int>(gens_.size());
                            gens_.push_back({a2, a, a1});
                        }
            }
        gen_hom_.resize(gens_.size());
        for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
            auto& t = gens_[g];
            gen_hom_[g] = hom_of(A2_.obj_src2(t.first), obj_b_[B_.obj_tgt2(t.second)]);
        }
    }

    // source / target 1-cell triplets of a generator
    int gen_src(int g) const {
        auto& t = gens_[g];
        return triplet1(B_.two[t.second].src, t.a, A2_.two[t.first].src);
    }
    int gen_tgt(int g) const {
        auto& t = gens_[g];
        return triplet1(B_.two[t.second].tgt, t.a, A2_.two[t.first].tgt);
    }

    void relations() {
        UnionFind uf(static_cast<int>(gens_.size()));
        std::vector<std::size_t> r3(homs_.size(), 0);
        for (int ga = 0; ga < A_.n2(); ++ga) {
            int a = A_.obj_src2(ga), a2 = A_.obj_tgt2(ga);
            for (int f2 : B_.out1[i_.obj[a2]]) {
                if (in_a(B_.one[f2].tgt)) continue;
                for (int al2 : B_.out2[f2])
                    for (int f1 : A2_.in1[u_.obj[a]])
                        for (int al1 : A2_.out2[f1]) {
                            int lhs = gen(B_.hcompose(al2, i_.two[ga]), a, al1);
                            int rhs = gen(al2, a2, A2_.hcompose(u_.two[ga], al1));
                            if (uf.unite(lhs, rhs)) homs_[gen_hom_[lhs]]->pres.r3_witness.push_back({{lhs, rhs}, ga});
                            ++r3[gen_hom_[lhs]];
                        }
            }
        }
        // letters: generator classes not containing an identity triplet
        std::vector<char> identity_class(gens_.size(), 0);
        for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
            auto& t = gens_[g];
            if (t.second == B_.id2[B_.two[t.second].src] && t.first == A2_.id2[A2_.two[t.first].src])
                identity_class[uf.find(g)] = 1;
        }
        letter_.assign(gens_.size(), -1);
        for (int g = 0; g < static_cast<int>(gens_.size()); ++g) {
            int c = uf.find(g);
            if (identity_class[c]) continue;
            if (c == g) {
                Hom& h = *homs_[gen_hom_[g]];
                letter_[g] = static_cast<int>(h.letter_gen.size());
                h.letter_gen.push_back(g);
                h.letter_src.push_back(local_object(h, gen_src(g)));
                h.letter_tgt.push_back(local_object(h, gen_tgt(g)));
            } else {
                letter_[g] = letter_[c];
            }
        }
        std::vector<std::size_t> r1(homs_.size(), 0), r2(homs_.size(), 0);
        for (int g = 0; g < static_cast<int>(gens_.size()); ++g)
            if (identity_class[uf.find(g)]) {
                auto& t = gens_[g];
                if (t.second == B_.id2[B_.two[t.second].src] && t.first == A2_.id2[A2_.two[t.first].src]) ++r2[gen_hom_[g]];
            }
        // R1, componentwise vertical composition
        for (int g1 = 0; g1 < static_cast<int>(gens_.size()); ++g1) {
            auto& t1 = gens_[g1];
            for (int b2 : B_.out2[B_.two[t1.second].tgt])
                for (int b1 : A2_.out2[A2_.two[t1.first].tgt]) {
                    int g2 = gen(b2, t1.a, b1);
                    int g3 = gen(B_.vcompose(b2, t1.second), t1.a, A2_.vcompose(b1, t1.first));
                    Word lhs = word(g1);
                    Word w2 = word(g2);
                    lhs.insert(lhs.end(), w2.begin(), w2.end());
                    homs_[gen_hom_[g1]]->equations.emplace_back(std::move(lhs), word(g3));
                    ++r1[gen_hom_[g1]];
                }
        }
        for (std::size_t h = 0; h < homs_.size(); ++h) {
            auto& p = homs_[h]->pres;
            p.r1 = r1[h];
            p.r2 = r2[h];
            p.r3 = r3[h];
        }
    }

    Word word(int g) const { return letter_[g] < 0 ? Word{} : Word{letter_[g]}; }

    void normal_forms() {
        for (auto& hp : homs_) {
            Hom& h = *hp;
            h.rw = std::make_unique<Rewriter>(lim_.max_word, lim_.max_states);
            for (auto& [a, b] : h.equations) h.rw->add(a, b);
            h.rw->complete();
            // one empty word per object, then breadth first over irreducible words
            for (int o = 0; o < static_cast<int>(h.obj_classes.size()); ++o) {
                std::vector<Word> layer{Word{}};
                while (!layer.empty()) {
                    std::vector<Word> next;
                    for (auto& w : layer) {
                        h.cell_index[{o, w}] = static_cast<int>(h.cells.size());
                        h.cells.emplace_back(o, w);
                        if (h.cells.size() > lim_.max_states)
                            throw NormalizationBudgetExceeded("mixed hom has more than " + std::to_string(lim_.max_states) + " 2-cells");
                        int end = w.empty() ? o : h.letter_tgt[w.back()];
                        for (int l = 0; l < static_cast<int>(h.letter_gen.size()); ++l) {
                            if (h.letter_src[l] != end) continue;
                            Word ext = w;
                            ext.push_back(l);
                            if (h.rw->reducible_suffix(ext)) continue;
                            if (static_cast<int>(ext.size()) > lim_.max_word)
                                throw NormalizationBudgetExceeded("normal forms longer than " + std::to_string(lim_.max_word) + " letters");
                            next.push_back(std::move(ext));
                        }
                    }
                    layer = std::move(next);
                }
            }
            h.pres.x = h.x;
            h.pres.y = h.y;
            for (int cls : h.obj_classes) h.pres.objects.push_back(t1_[cls]);
            h.pres.rules = h.rw->size();
        }
        for (int g = 0; g < static_cast<int>(gens_.size()); ++g) homs_[gen_hom_[g]]->pres.generators.push_back(gens_[g]);
    }

    std::string triplet_name(int f2, int f1) const { return "[" + B_.one[f2].name + "|" + A2_.one[f1].name + "]"; }

    int mixed_one(int t1) const { return mixed1_of_class_.at(t1_class_[t1]); }

    // apex 2-cell for a word in hom h starting at the local object o
    int mixed_two(int h, int o, const Word& w) const {
        const Hom& hm = *homs_[h];
        Word nf = hm.rw->reduce(w);
        auto it = hm.cell_index.find({o, nf});
        if (it == hm.cell_index.end()) throw ShapeError("normal form missing from the mixed hom");
        return hm.first_cell + it->second;
    }

    int hom_of_cell1(int f) const { return hom_index_.at({P_.one[f].src, P_.one[f].tgt}); }
    int local_of_cell1(int f) const {
        const Hom& h = *homs_[hom_of_cell1(f)];
        return h.local_obj.at(class_of_mixed1_[f]);
    }

    void assemble() {
        // 1-cells
        for (int f = 0; f < A2_.n1(); ++f) add1(A2_.one[f].src, A2_.one[f].tgt, A2_.one[f].name, kFromA2, f);
        one_b_.assign(B_.n1(), -1);
        for (int f = 0; f < B_.n1(); ++f)
            if (!in_a(B_.one[f].src)) one_b_[f] = add1(obj_b_[B_.one[f].src], obj_b_[B_.one[f].tgt], B_.one[f].name, kFromB, f);
        class_of_mixed1_.assign(P_.n1(), -1);
        for (auto& hp : homs_) {
            Hom& h = *hp;
            for (int cls : h.obj_classes) {
                auto& t = t1_[cls];
                int f = add1(h.x, h.y, triplet_name(t.second, t.first), kMixed, -1);
                sq_.rep1[f] = t;
                mixed1_of_class_[cls] = f;
                class_of_mixed1_.push_back(cls);
            }
        }
        class_of_mixed1_.resize(P_.n1(), -1);
        for (int x = 0; x < A2_.n0(); ++x) P_.id1.push_back(A2_.id1[x]);
        for (int y = 0; y < B_.n0(); ++y)
            if (!in_a(y)) P_.id1.push_back(one_b_[B_.id1[y]]);

        // 2-cells
        for (int a = 0; a < A2_.n2(); ++a) add2(A2_.two[a].src, A2_.two[a].tgt, A2_.two[a].name, kFromA2, a);
        two_b_.assign(B_.n2(), -1);
        for (int a = 0; a < B_.n2(); ++a)
            if (!in_a(B_.obj_src2(a))) two_b_[a] = add2(one_b_[B_.two[a].src], one_b_[B_.two[a].tgt], B_.two[a].name, kFromB, a);
        for (auto& hp : homs_) {
            Hom& h = *hp;
            h.first_cell = P_.n2();
            for (auto& [o, w] : h.cells) {
                int s = mixed1_of_class_.at(h.obj_classes[o]);
                int e = w.empty() ? o : h.letter_tgt[w.back()];
                int t = mixed1_of_class_.at(h.obj_classes[e]);
                std::vector<std::string> parts;
                std::vector<Triplet> reps;
                for (int l : w) {
                    auto& g = gens_[h.letter_gen[l]];
                    parts.push_back("[" + B_.two[g.second].name + "|" + A2_.two[g.first].name + "]");
                    reps.push_back(g);
                }
                int c = add2(s, t, w.empty() ? "1_" + P_.one[s].name : join(parts, ";"), kMixed, -1);
                sq_.rep2[c] = reps;
            }
        }
        P_.id2.resize(P_.n1());
        for (int f = 0; f < P_.n1(); ++f) {
            if (sq_.origin1[f] == kFromA2) P_.id2[f] = A2_.id2[f];
            else if (sq_.origin1[f] == kFromB) P_.id2[f] = two_b_[B_.id2[sq_.ref1[f]]];
            else P_.id2[f] = mixed_two(hom_of_cell1(f), local_of_cell1(f), {});
        }
        P_.finalize();

        // horizontal composition of 1-cells
        for (int f = 0; f < P_.n1(); ++f)
            for (int g : P_.out1[P_.one[f].tgt]) P_.comp[pair_key(g, f)] = compose1(g, f);
        // vertical composition
        for (int a = 0; a < P_.n2(); ++a)
            for (int b : P_.out2[P_.two[a].tgt]) P_.vcomp[pair_key(b, a)] = vcompose2(b, a);
        // horizontal composition
        for (int a = 0; a < P_.n2(); ++a)
            for (int g : P_.out1[P_.obj_tgt2(a)])
                for (int b : P_.out2[g]) P_.hcomp[pair_key(b, a)] = hcompose2(b, a);

        require_valid(P_);
        settle_enrichment(P_);
        auto apex = share(std::move(P_));
        legs(apex);
        for (auto& hp : homs_) sq_.presentations.push_back(hp->pres);
    }

    int add1(int s, int t, const std::string& name, char origin, int ref) {
        P_.one.push_back({s, t, name});
        sq_.origin1.push_back(origin);
        sq_.ref1.push_back(ref);
        sq_.rep1.emplace_back();
        return P_.n1() - 1;
    }

    int add2(int s, int t, const std::string& name, char origin, int ref) {
        P_.two.push_back({s, t, name});
        sq_.origin2.push_back(origin);
        sq_.ref2.push_back(ref);
        sq_.rep2.emplace_back();
        return P_.n2() - 1;
    }

    int compose1(int g, int f) const {
        char og = sq_.origin1[g], of = sq_.origin1[f];
        if (og == kFromA2 && of == kFromA2) return A2_.compose(g, f);
        if (og == kFromB && of == kFromB) return one_b_[B_.compose(sq_.ref1[g], sq_.ref1[f])];
        if (of == kMixed) {  // g from B
            auto t = sq_.rep1[f];
            return mixed_one(triplet1(B_.compose(sq_.ref1[g], t.second), t.a, t.first));
        }
        auto t = sq_.rep1[g];  // f from A'
        return mixed_one(triplet1(t.second, t.a, A2_.compose(t.first, f)));
    }

    int vcompose2(int b, int a) const {
        char o = sq_.origin2[a];
        if (o == kFromA2) return A2_.vcompose(b, a);
        if (o == kFromB) return two_b_[B_.vcompose(sq_.ref2[b], sq_.ref2[a])];
        int h = hom_of_cell1(P_.two[a].src);
        const Hom& hm = *homs_[h];
        auto& [oa, wa] = hm.cells[a - hm.first_cell];
        Word w = wa;
        const Word& wb = hm.cells[b - hm.first_cell].second;
        w.insert(w.end(), wb.begin(), wb.end());
        return mixed_two(h, oa, w);
    }

    int hcompose2(int b, int a) const {
        char ob = sq_.origin2[b], oa = sq_.origin2[a];
        if (ob == kFromA2 && oa == kFromA2) return A2_.hcompose(b, a);
        if (ob == kFromB && oa == kFromB) return two_b_[B_.hcompose(sq_.ref2[b], sq_.ref2[a])];
        int src = P_.compose(P_.two[b].src, P_.two[a].src);
        int h = hom_of_cell1(src);
        int o = local_of_cell1(src);
        Word w;
        auto append = [&](int a2, int a_obj, int a1) {
            Word part = word(gen(a2, a_obj, a1));
            w.insert(w.end(), part.begin(), part.end());
        };
        if (ob == kMixed) {
            // b mixed over y, z; a : g => g' in A'. b * a = (b * g') . (src b * a)
            auto s = sq_.rep1[P_.two[b].src];
            int g2 = P_.two[a].tgt;
            append(B_.id2[s.second], s.a, A2_.hcompose(A2_.id2[s.first], a));
            for (auto& t : rep_word(b)) append(t.second, t.a, A2_.hcompose(t.first, A2_.id2[g2]));
        } else {
            // a mixed, b : k => k' in B. b * a = (b * tgt a) . (k * a)
            int k = sq_.ref1[P_.two[b].src];
            auto e = sq_.rep1[P_.two[a].tgt];
            for (auto& t : rep_word(a)) append(B_.hcompose(B_.id2[k], t.second), t.a, t.first);
            append(B_.hcompose(sq_.ref2[b], B_.id2[e.second]), e.a, A2_.id2[e.first]);
        }
        return mixed_two(h, o, w);
    }

    const std::vector<Triplet>& rep_word(int c) const { return sq_.rep2[c]; }

    void legs(const TwoCatPtr& apex) {
        sq_.i = i_;
        sq_.u = u_;
        sq_.i2 = TwoFunctor{u_.tgt, apex, {}, {}, {}};
        for (int x = 0; x < A2_.n0(); ++x) sq_.i2.obj.push_back(x);
        for (int f = 0; f < A2_.n1(); ++f) sq_.i2.one.push_back(f);
        for (int a = 0; a < A2_.n2(); ++a) sq_.i2.two.push_back(a);
        auto& v = sq_.v;
        v = TwoFunctor{i_.tgt, apex, {}, {}, {}};
        for (int y = 0; y < B_.n0(); ++y) v.obj.push_back(in_a(y) ? u_.obj[ia0_[y]] : obj_b_[y]);
        for (int f = 0; f < B_.n1(); ++f) {
            if (ia1_[f] >= 0) v.one.push_back(u_.one[ia1_[f]]);
            else if (!in_a(B_.one[f].src)) v.one.push_back(one_b_[f]);
            else {
                int a = ia0_[B_.one[f].src];
                v.one.push_back(mixed_one(triplet1(f, a, A2_.id1[u_.obj[a]])));
            }
        }
        for (int al = 0; al < B_.n2(); ++al) {
            if (ia2_[al] >= 0) v.two.push_back(u_.two[ia2_[al]]);
            else if (!in_a(B_.obj_src2(al))) v.two.push_back(two_b_[al]);
            else {
                int a = ia0_[B_.obj_src2(al)];
                int s = v.one[B_.two[al].src];
                int h = hom_index_.at({apex->one[s].src, apex->one[s].tgt});
                int o = homs_[h]->local_obj.at(class_of_mixed1_[s]);
                v.two.push_back(mixed_two(h, o, word(gen(al, a, A2_.id2[A2_.id1[u_.obj[a]]]))));
            }
        }
        sq_.origin0.clear();
        sq_.ref0.clear();
        for (int x = 0; x < A2_.n0(); ++x) {
            sq_.origin0.push_back(kFromA2);
            sq_.ref0.push_back(x);
        }
        for (int y = 0; y < B_.n0(); ++y)
            if (!in_a(y)) {
                sq_.origin0.push_back(kFromB);
                sq_.ref0.push_back(y);
            }
    }

    const TwoFunctor& i_;
    const TwoFunctor& u_;
    const TwoCat& A_;
    const TwoCat& B_;
    const TwoCat& A2_;
    PushoutLimits lim_;
    std::vector<int> ia0_, ia1_, ia2_;
    TwoCat P_;
    CocartSquare sq_;
    std::vector<int> obj_b_, one_b_, two_b_;

    std::vector<Triplet> t1_;
    std::map<std::tuple<int, int, int>, int> t1_index_;
    std::vector<int> t1_class_;
    std::map<int, int> mixed1_of_class_;
    std::vector<int> class_of_mixed1_;

    std::vector<Triplet> gens_;
    std::map<std::tuple<int, int, int>, int> gen_index_;
    std::vector<int> gen_hom_;
    std::vector<int> letter_;

    std::vector<std::unique_ptr<Hom>> homs_;
    std::map<std::pair<int, int>, int> hom_index_;
};

// ---------------------------------------------------------------- pushout along O(E) -> O(F)

class OSievePushout {
public:
    OSievePushout(const MonotoneMap& s, const OPoset& oe, const OPoset& of, const TwoFunctor& u)
        : s_(s), oe_(oe), of_(of), u_(u), A2_(*u.tgt), F_(*of.c) {
        e_of_.assign(of.e.size(), -1);
        for (int a = 0; a < oe.e.size(); ++a) e_of_[s.map[a]] = a;
    }

    CocartSquare build() {
        for (int x = 0; x < A2_.n0(); ++x) {
            P_.objects.push_back(A2_.objects[x]);
            sq_.origin0.push_back(kFromA2);
            sq_.ref0.push_back(x);
        }
        obj_f_.assign(F_.n0(), -1);
        for (int y = 0; y < F_.n0(); ++y)
            if (!in_e(y)) {
                obj_f_[y] = P_.n0();
                P_.objects.push_back(F_.objects[y]);
                sq_.origin0.push_back(kFromB);
                sq_.ref0.push_back(y);
            }
        for (int f = 0; f < A2_.n1(); ++f) add1(A2_.one[f].src, A2_.one[f].tgt, A2_.one[f].name, kFromA2, f, {});
        one_f_.assign(F_.n1(), -1);
        for (int f = 0; f < F_.n1(); ++f)
            if (!in_e(F_.one[f].src))
                one_f_[f] = add1(obj_f_[F_.one[f].src], obj_f_[F_.one[f].tgt], F_.one[f].name, kFromB, f, {});
        for (int x = 0; x < A2_.n0(); ++x) P_.id1.push_back(A2_.id1[x]);
        for (int y = 0; y < F_.n0(); ++y)
            if (!in_e(y)) P_.id1.push_back(one_f_[F_.id1[y]]);
        // mixed 1-cells (S, a, h)
        for (int x = 0; x < A2_.n0(); ++x)
            for (int S = 0; S < F_.n1(); ++S) {
                const auto& ch = of_.chain[S];
                if (!in_e(ch.front()) || in_e(ch.back())) continue;
                if (std::count_if(ch.begin(), ch.end(), [&](int e) { return in_e(e); }) != 1) continue;
                int a = e_of_[ch.front()];
                for (int h : A2_.hom(x, u_.obj[a]))
                    mixed_[{S, a, h}] = add1(x, obj_f_[ch.back()], "[" + F_.one[S].name + "|" + A2_.one[h].name + "]", kMixed,
                                             -1, Triplet{S, a, h});
            }
        for (int a = 0; a < A2_.n2(); ++a) add2(A2_.two[a].src, A2_.two[a].tgt, A2_.two[a].name, kFromA2, a, {});
        two_f_.assign(F_.n2(), -1);
        for (int a = 0; a < F_.n2(); ++a)
            if (!in_e(F_.obj_src2(a))) two_f_[a] = add2(one_f_[F_.two[a].src], one_f_[F_.two[a].tgt], F_.two[a].name, kFromB, a, {});
        // mixed 2-cells alpha : u({a0, a1}) h0 => h1
        std::vector<int> mixed_cells;
        for (int f = 0; f < P_.n1(); ++f)
            if (sq_.origin1[f] == kMixed) mixed_cells.push_back(f);
        for (int m0 : mixed_cells)
            for (int m1 : mixed_cells) {
                const Triplet t0 = sq_.rep1[m0], t1 = sq_.rep1[m1];
                if (P_.one[m0].src != P_.one[m1].src || P_.one[m0].tgt != P_.one[m1].tgt) continue;
                if (!admissible(t0, t1)) continue;
                int src = A2_.compose(u_.one[e_chain({t0.a, t1.a})], t0.first);
                for (int al : A2_.out2[src]) {
                    if (A2_.two[al].tgt != t1.first) continue;
                    int c = add2(m0, m1, "[" + P_.one[m0].name + "=>" + P_.one[m1].name + "|" + A2_.two[al].name + "]",
                                 kMixed, -1, {});
                    mixed2_[{m0, m1, al}] = c;
                    alpha_.resize(P_.n2(), -1);
                    alpha_[c] = al;
                    int link = F_.cell_between(t0.second, of_.one_of(with(of_.chain[t1.second], s_.map[t0.a])));
                    sq_.rep2[c] = {Triplet{link, t0.a, A2_.id2[t0.first]}, Triplet{F_.id2[t1.second], t1.a, al}};
                }
            }
        alpha_.resize(P_.n2(), -1);
        for (int f = 0; f < P_.n1(); ++f) {
            if (sq_.origin1[f] == kFromA2) P_.id2.push_back(A2_.id2[f]);
            else if (sq_.origin1[f] == kFromB) P_.id2.push_back(two_f_[F_.id2[sq_.ref1[f]]]);
            else P_.id2.push_back(mixed2_.at({f, f, A2_.id2[sq_.rep1[f].first]}));
        }
        P_.finalize();
        for (int f = 0; f < P_.n1(); ++f)
            for (int g : P_.out1[P_.one[f].tgt]) P_.comp[pair_key(g, f)] = compose1(g, f);
        for (int a = 0; a < P_.n2(); ++a)
            for (int b : P_.out2[P_.two[a].tgt]) P_.vcomp[pair_key(b, a)] = vcompose2(b, a);
        for (int a = 0; a < P_.n2(); ++a)
            for (int g : P_.out1[P_.obj_tgt2(a)])
                for (int b : P_.out2[g]) P_.hcomp[pair_key(b, a)] = hcompose2(b, a);
        require_valid(P_);
        settle_enrichment(P_);
        auto apex = share(std::move(P_));
        legs(apex);
        return std::move(sq_);
    }

private:
    bool in_e(int y) const { return e_of_[y] >= 0; }

    // 1-cell of O(E) for a set of elements of E
    int e_chain(std::vector<int> es) const { return oe_.one_of(std::move(es)); }

    static std::vector<int> with(std::vector<int> v, int x) {
        v.push_back(x);
        return v;
    }

    bool admissible(const Triplet& t0, const Triplet& t1) const {
        if (!oe_.e.leq(t0.a, t1.a)) return false;
        const auto& s0 = of_.chain[t0.second];
        const auto& s1 = of_.chain[t1.second];
        for (std::size_t k = 1; k < s0.size(); ++k)
            if (std::find(s1.begin() + 1, s1.end(), s0[k]) == s1.end()) return false;
        return true;
    }

    int add1(int s, int t, const std::string& name, char origin, int ref, Triplet rep) {
        P_.one.push_back({s, t, name});
        sq_.origin1.push_back(origin);
        sq_.ref1.push_back(ref);
        sq_.rep1.push_back(rep);
        return P_.n1() - 1;
    }

    int add2(int s, int t, const std::string& name, char origin, int ref, std::vector<Triplet> rep) {
        P_.two.push_back({s, t, name});
        sq_.origin2.push_back(origin);
        sq_.ref2.push_back(ref);
        sq_.rep2.push_back(std::move(rep));
        return P_.n2() - 1;
    }

    int mixed(int S, int a, int h) const { return mixed_.at({S, a, h}); }
    int mixed2(int m0, int m1, int al) const { return mixed2_.at({m0, m1, al}); }

    int compose1(int g, int f) const {
        char og = sq_.origin1[g], of = sq_.origin1[f];
        if (og == kFromA2 && of == kFromA2) return A2_.compose(g, f);
        if (og == kFromB && of == kFromB) return one_f_[F_.compose(sq_.ref1[g], sq_.ref1[f])];
        if (of == kMixed) {
            const auto& t = sq_.rep1[f];
            return mixed(F_.compose(sq_.ref1[g], t.second), t.a, t.first);
        }
        const auto& t = sq_.rep1[g];
        return mixed(t.second, t.a, A2_.compose(t.first, f));
    }

    int vcompose2(int b, int a) const {
        char o = sq_.origin2[a];
        if (o == kFromA2) return A2_.vcompose(b, a);
        if (o == kFromB) return two_f_[F_.vcompose(sq_.ref2[b], sq_.ref2[a])];
        const auto& t0 = sq_.rep1[P_.two[a].src];
        const auto& t1 = sq_.rep1[P_.two[a].tgt];
        const auto& t2 = sq_.rep1[P_.two[b].tgt];
        int a0 = t0.a, a1 = t1.a, a2 = t2.a;
        int incl = oe_.c->cell_between(e_chain({a0, a2}), e_chain({a0, a1, a2}));
        int c0 = A2_.whisker_right(u_.two[incl], t0.first);
        int c1 = A2_.whisker_left(u_.one[e_chain({a1, a2})], alpha_[a]);
        int al = A2_.vcompose(alpha_[b], A2_.vcompose(c1, c0));
        return mixed2(P_.two[a].src, P_.two[b].tgt, al);
    }

    int hcompose2(int b, int a) const {
        char ob = sq_.origin2[b], oa = sq_.origin2[a];
        if (ob == kFromA2 && oa == kFromA2) return A2_.hcompose(b, a);
        if (ob == kFromB && oa == kFromB) return two_f_[F_.hcompose(sq_.ref2[b], sq_.ref2[a])];
        int src = P_.compose(P_.two[b].src, P_.two[a].src);
        int tgt = P_.compose(P_.two[b].tgt, P_.two[a].tgt);
        if (ob == kMixed) return mixed2(src, tgt, A2_.hcompose(alpha_[b], a));
        return mixed2(src, tgt, alpha_[a]);
    }

    void legs(const TwoCatPtr& apex) {
        sq_.i = o_map(s_, oe_, of_);
        sq_.u = u_;
        sq_.i2 = TwoFunctor{u_.tgt, apex, {}, {}, {}};
        for (int x = 0; x < A2_.n0(); ++x) sq_.i2.obj.push_back(x);
        for (int f = 0; f < A2_.n1(); ++f) sq_.i2.one.push_back(f);
        for (int a = 0; a < A2_.n2(); ++a) sq_.i2.two.push_back(a);
        auto& v = sq_.v;
        v = TwoFunctor{of_.c, apex, {}, {}, {}};
        for (int y = 0; y < F_.n0(); ++y) v.obj.push_back(in_e(y) ? u_.obj[e_of_[y]] : obj_f_[y]);
        struct Split {
            std::vector<int> e_part;  // elements of E
            int a;
            int rest;  // 1-cell of O(F)
        };
        auto split = [&](int S) {
            Split sp;
            std::vector<int> rest;
            for (int x : of_.chain[S])
                if (in_e(x)) sp.e_part.push_back(e_of_[x]);
                else rest.push_back(x);
            sp.a = sp.e_part.back();
            rest.insert(rest.begin(), s_.map[sp.a]);
            sp.rest = of_.one_of(rest);
            return sp;
        };
        for (int S = 0; S < F_.n1(); ++S) {
            const auto& ch = of_.chain[S];
            if (in_e(ch.back())) {
                std::vector<int> es;
                for (int x : ch) es.push_back(e_of_[x]);
                v.one.push_back(u_.one[e_chain(es)]);
            } else if (!in_e(ch.front())) {
                v.one.push_back(one_f_[S]);
            } else {
                auto sp = split(S);
                v.one.push_back(mixed(sp.rest, sp.a, u_.one[e_chain(sp.e_part)]));
            }
        }
        for (int al = 0; al < F_.n2(); ++al) {
            int S0 = F_.two[al].src, S1 = F_.two[al].tgt;
            const auto& ch = of_.chain[S0];
            if (in_e(ch.back())) {
                v.two.push_back(u_.two[oe_.c->cell_between(v_e_cell(S0), v_e_cell(S1))]);
            } else if (!in_e(ch.front())) {
                v.two.push_back(two_f_[al]);
            } else {
                auto p0 = split(S0), p1 = split(S1);
                auto lhs = p0.e_part;
                lhs.push_back(p1.a);
                int incl = oe_.c->cell_between(e_chain(lhs), e_chain(p1.e_part));
                v.two.push_back(mixed2(v.one[S0], v.one[S1], u_.two[incl]));
            }
        }
    }

    int v_e_cell(int S) const {
        std::vector<int> es;
        for (int x : of_.chain[S]) es.push_back(e_of_[x]);
        return e_chain(es);
    }

    const MonotoneMap& s_;
    const OPoset& oe_;
    const OPoset& of_;
    const TwoFunctor& u_;
    const TwoCat& A2_;
    const TwoCat& F_;
    std::vector<int> e_of_, obj_f_, one_f_, two_f_;
    std::map<std::tuple<int, int, int>, int> mixed_;
    std::map<std::tuple<int, int, int>, int> mixed2_;
    std::vector<int> alpha_;
    TwoCat P_;
    CocartSquare sq_;
};

}  // namespace

CocartSquare pushout_sieve_2cat(const TwoFunctor& i, const TwoFunctor& u, const PushoutLimits& lim) {
    require_sieve(i, u);
    return GeneralPushout(i, u, lim).build();
}

CocartSquare pushout_sieve_cat(const TwoFunctor& i, const TwoFunctor& u, const PushoutLimits& lim) {
    for (const TwoCat* c : {i.src.get(), i.tgt.get(), u.tgt.get()})
        if (c->n2() != c->n1()) throw ShapeError("pushout_sieve_cat needs locally discrete categories");
    return pushout_sieve_2cat(i, u, lim);
}

CocartSquare pushout_o_sieve(const MonotoneMap& s, const OPoset& oe, const OPoset& of, const TwoFunctor& u) {
    if (!analyze_sieve(s).is_sieve) throw NotASieve("pushout_o_sieve needs a sieve of posets");
    if (u.src->n0() != oe.c->n0() || u.src->n1() != oe.c->n1()) throw ShapeError("u does not start at O(E)");
    return OSievePushout(s, oe, of, u).build();
}

}  // namespace cat2
