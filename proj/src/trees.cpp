#include "qpr/trees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qpr/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpr {

long long LabelledTree::mode_mass() const {
    long long m = 0;
    for (const Multi& nu : mode) m += l1_norm(nu);
    return m;
}

std::string LabelledTree::dump() const {
    std::string out;
    std::function<void(int)> rec = [&](int v) {
        out += "[v" + to_string(mode[v]) + " l" + to_string(momentum[v]) + " n" +
               std::to_string(scale[v]) + "]";
        if (!children[v].empty()) {
            out += "(";
            for (size_t i = 0; i < children[v].size(); ++i) {
                if (i) out += " ";
                rec(children[v][i]);
            }
            out += ")";
        }
    };
    rec(0);
    return out;
}

TreeContext::TreeContext(const ForcingSpec& spec, const FrequencyVector& omega,
                         const CutoffFamily& fam, int k_max)
    : spec_(&spec), omega_(&omega), fam_(&fam), k_max_(k_max),
      factors_(spec, static_cast<unsigned>(k_max) + 2) {
    reach_ = reachable_momenta(spec, std::max(k_max, 1));
    BigFloat thr = omega.resonance_threshold();
    std::set<Multi> all;
    for (int j = 1; j <= std::max(k_max, 1); ++j) all.insert(reach_[j].begin(), reach_[j].end());
    all.insert(Multi(spec.dim(), 0));
    for (const Multi& nu : all) {
        BigFloat x = omega.dot(nu);
        if (!qpr::is_zero(nu) && x.abs() < thr)
            throw ResonantFrequencyError("omega.nu resonant at nu=" + to_string(nu));
        divisors_[nu] = qpr::is_zero(nu) ? 0.0 : x.to_double();
    }
}

double TreeContext::divisor(const Multi& nu) const {
    auto it = divisors_.find(nu);
    if (it == divisors_.end()) throw Error("divisor cache miss at nu=" + to_string(nu));
    return it->second;
}

const TrigPoly& TreeContext::factor(const Multi& nu, unsigned s) const {
    return factors_.factor(nu, s);
}

const std::vector<Multi>& TreeContext::reach(int j) const {
    if (j < 1 || j >= static_cast<int>(reach_.size()))
        throw Error("reach set out of range: j=" + std::to_string(j));
    return reach_[j];
}

bool TreeContext::reachable(int j, const Multi& nu) const {
    if (j == 0) return qpr::is_zero(nu);
    const auto& r = reach(j);
    return std::binary_search(r.begin(), r.end(), nu);
}

namespace {

// Mutable state threaded through the recursive generator.
struct Builder {
    const TreeContext* ctx;
    const TreeEnumOptions* opts;
    LabelledTree t;

    int add_node(int parent, const Multi& mode, const Multi& momentum) {
        int idx = t.order();
        t.parent.push_back(parent);
        t.children.emplace_back();
        t.mode.push_back(mode);
        t.momentum.push_back(momentum);
        t.scale.push_back(0);
        if (parent >= 0) t.children[parent].push_back(idx);
        return idx;
    }
    void pop_node(int parent) {
        t.parent.pop_back();
        t.children.pop_back();
        t.mode.pop_back();
        t.momentum.pop_back();
        t.scale.pop_back();
        if (parent >= 0) t.children[parent].pop_back();
    }
};

using Cont = std::function<void()>;

void gen_tree(Builder& b, int order, const Multi& mu, int parent, const Cont& done);

// Attach children of `node` covering `rem` more nodes with momenta summing to rmom.
void gen_children(Builder& b, int node, int rem, const Multi& rmom, const Cont& done) {
    if (rem == 0) {
        if (qpr::is_zero(rmom)) done();
        return;
    }
    const ForcingSpec& spec = b.ctx->spec();
    for (int j1 = 1; j1 <= rem; ++j1) {
        for (const Multi& mu1 : b.ctx->reach(j1)) {
            if (qpr::is_zero(mu1) && !b.opts->allow_zero_lines) continue;
            Multi rest = sub(rmom, mu1);
            // remaining rem - j1 nodes (their mode sum) must make up `rest`
            if (rem - j1 == 0) {
                if (!qpr::is_zero(rest)) continue;
            } else if (l1_norm(rest) > (rem - j1) * spec.Nf()) {
                continue;
            }
            gen_tree(b, j1, mu1, node, [&] { gen_children(b, node, rem - j1, rest, done); });
        }
    }
}

// One subtree of `order` nodes whose root line carries momentum mu.
void gen_tree(Builder& b, int order, const Multi& mu, int parent, const Cont& done) {
    const ForcingSpec& spec = b.ctx->spec();
    for (const Multi& m0 : spec.support()) {
        Multi rest = sub(mu, m0);
        if (order == 1) {
            if (!qpr::is_zero(rest)) continue;
        } else if (l1_norm(rest) > (order - 1) * spec.Nf()) {
            continue;
        }
        int idx = b.add_node(parent, m0, mu);
        gen_children(b, idx, order - 1, rest, done);
        b.pop_node(parent);
    }
}

// Assign scale labels to a completed skeleton and emit one tree per admissible
// assignment (sharp: exactly one).  Lines with zero momentum other than the
// root line cannot occur here (generator excludes them unless building
// self-energy skeletons, which use their own labelling path).
void emit_with_scales(Builder& b, const TreeVisitor& visit) {
    LabelledTree& t = b.t;
    int k = t.order();
    if (b.opts->skeleton) {
        // raw skeleton: labels assigned later by the structure machinery
        for (int v = 0; v < k; ++v) t.scale[v] = kScaleUnassigned;
        visit(t);
        return;
    }
    const CutoffFamily& fam = b.ctx->family();
    std::vector<std::vector<int>> options(k);
    for (int v = 0; v < k; ++v) {
        if (qpr::is_zero(t.momentum[v])) {
            options[v] = {-1};  // zero-momentum root line
            continue;
        }
        double x = b.ctx->divisor(t.momentum[v]);
        if (b.opts->cutoff == CutoffVariant::Sharp) {
            int n = fam.sharp_scale(x);
            if (n == kScaleBeyond)
                throw ScaleRangeError("divisor below certified ladder in tree labelling");
            options[v] = {n};
        } else {
            for (auto [n, w] : fam.admissible_scales(x)) options[v].push_back(n);
        }
    }
    // odometer over per-line choices
    std::vector<size_t> pick(k, 0);
    while (true) {
        for (int v = 0; v < k; ++v) t.scale[v] = options[v][pick[v]];
        bool keep = true;
        if (b.opts->mode == TreeMode::Renormalised) {
            ClusterReport rep = analyze_clusters(lines_of_tree(t), k);
            keep = !rep.has_self_energy();
        }
        if (keep) visit(t);
        int v = 0;
        for (; v < k; ++v) {
            if (++pick[v] < options[v].size()) break;
            pick[v] = 0;
        }
        if (v == k) break;
    }
}

}  // namespace

void enumerate_trees(const TreeContext& ctx, const TreeEnumOptions& opts, const TreeVisitor& visit) {
    if (opts.k < 1) return;
    if (opts.k > opts.cap)
        throw CapExceededError("tree order " + std::to_string(opts.k) + " above cap " +
                               std::to_string(opts.cap));
    if (opts.k > ctx.k_max()) throw CapExceededError("tree order above context k_max");
    Builder b{&ctx, &opts, {}};
    gen_tree(b, opts.k, opts.total, -1, [&] { emit_with_scales(b, visit); });
}

TrigPoly tree_value(const TreeContext& ctx, const LabelledTree& t, CutoffVariant cutoff) {
    TrigPoly val = TrigPoly::constant(1.0);
    const CutoffFamily& fam = ctx.family();
    for (int v = 0; v < t.order(); ++v) {
        const TrigPoly& f = ctx.factor(t.mode[v], static_cast<unsigned>(t.s(v)));
        if (f.empty()) return TrigPoly::zero();
        val = val * f;
        if (t.scale[v] == -1) continue;  // zero-momentum root line: factor 1
        double x = ctx.divisor(t.momentum[v]);
        double w = (cutoff == CutoffVariant::Sharp) ? 1.0 : fam.Psi_n(t.scale[v], x);
        if (w == 0.0) return TrigPoly::zero();
        val = val.scaled(w / (x * x));
    }
    return val;
}

double tree_value_dressed(const TreeContext& ctx, const LabelledTree& t,
                          const PropagatorProvider& prop, double beta0) {
    double val = 1.0;
    for (int v = 0; v < t.order(); ++v) {
        const TrigPoly& f = ctx.factor(t.mode[v], static_cast<unsigned>(t.s(v)));
        if (f.empty()) return 0.0;
        val *= f.evaluate_real(beta0);
        if (t.scale[v] == -1) continue;
        val *= prop.propagator(t.scale[v], ctx.divisor(t.momentum[v]));
    }
    return val;
}

TrigPoly sum_trees_serial_reference(const TreeContext& ctx, const TreeEnumOptions& opts) {
    TrigPoly acc;
    enumerate_trees(ctx, opts, [&](const LabelledTree& t) { acc += tree_value(ctx, t, opts.cutoff); });
    return acc;
}

TrigPoly sum_trees(const TreeContext& ctx, const TreeEnumOptions& opts) {
    if (opts.k < 1) return TrigPoly::zero();
    if (opts.k == 1) return sum_trees_serial_reference(ctx, opts);
    // Task = root-node mode (the rest of the enumeration hangs below it).
    const auto& supp = ctx.spec().support();
    std::vector<TrigPoly> partial(supp.size());
    std::vector<int> idx(supp.size());
    std::iota(idx.begin(), idx.end(), 0);
#pragma omp parallel for schedule(dynamic)
    for (size_t i = 0; i < supp.size(); ++i) {
        const Multi& m0 = supp[i];
        Multi rest = sub(opts.total, m0);
        if (opts.k > 1 && l1_norm(rest) > (opts.k - 1) * ctx.spec().Nf()) continue;
        TreeEnumOptions sub_opts = opts;
        Builder b{&ctx, &sub_opts, {}};
        TrigPoly local;
        TreeVisitor visit = [&](const LabelledTree& t) { local += tree_value(ctx, t, opts.cutoff); };
        int root = b.add_node(-1, m0, opts.total);
        gen_children(b, root, opts.k - 1, rest, [&] { emit_with_scales(b, visit); });
        partial[i] = std::move(local);
    }
    TrigPoly acc;
    for (auto& p : partial) acc += p;  // fixed merge order: deterministic
    return acc;
}

// ---- clusters -----------------------------------------------------------

std::vector<LineRef> lines_of_tree(const LabelledTree& t) {
    std::vector<LineRef> lines;
    for (int v = 0; v < t.order(); ++v) {
        LineRef l;
        l.child = v;
        l.parent = t.parent[v];
        l.nu0 = t.momentum[v];
        l.shifted = false;
        l.scale = t.scale[v];
        lines.push_back(std::move(l));
    }
    return lines;
}

bool ClusterReport::has_self_energy() const {
    for (const auto& c : clusters)
        if (c.self_energy) return true;
    return false;
}

bool ClusterReport::has_gap_self_energy() const {
    for (const auto& c : clusters)
        if (c.self_energy_gap) return true;
    return false;
}

namespace {

bool same_momentum(const LineRef& a, const LineRef& b) {
    return a.shifted == b.shifted && a.nu0 == b.nu0;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

void classify(const std::vector<LineRef>& lines, ClusterInfo& c, const std::vector<char>& in_c) {
    long long entering_scale_min = kScaleBeyond;
    int n_enter = 0;
    int enter_idx = -1;
    for (size_t i = 0; i < lines.size(); ++i) {
        const LineRef& l = lines[i];
        bool child_in = l.child >= 0 && in_c[l.child];
        bool parent_in = l.parent >= 0 && in_c[l.parent];
        if (parent_in && !child_in) {
            c.entering.push_back(static_cast<int>(i));
            ++n_enter;
            enter_idx = static_cast<int>(i);
            entering_scale_min = std::min<long long>(entering_scale_min, l.scale);
        } else if (child_in && !parent_in) {
            c.exiting = static_cast<int>(i);
        }
    }
    if (n_enter != 1 || c.exiting < 0) return;
    const LineRef& en = lines[enter_idx];
    const LineRef& ex = lines[c.exiting];
    if (!same_momentum(en, ex)) return;
    c.self_energy = true;
    // Single-node zero-mode clusters carry no gap requirement; larger clusters
    // must sit at least two scales below both external lines.
    if (c.scale == -1) {
        c.self_energy_gap = true;
    } else {
        long long next = std::min<long long>(entering_scale_min, ex.scale);
        c.self_energy_gap = (c.scale + 2 <= next);
    }
}

}  // namespace

ClusterReport analyze_clusters(const std::vector<LineRef>& lines, int n_nodes, bool with_fakes) {
    ClusterReport rep;
    rep.resonant.assign(lines.size(), 0);

    // scale -1 clusters: single nodes whose one entering + exiting momenta match
    for (int v = 0; v < n_nodes; ++v) {
        ClusterInfo c;
        c.nodes = {v};
        c.scale = -1;
        std::vector<char> in_c(n_nodes, 0);
        in_c[v] = 1;
        classify(lines, c, in_c);
        if (c.self_energy) rep.clusters.push_back(std::move(c));
    }

    // distinct internal scales, ascending
    std::set<int> scales;
    for (const auto& l : lines)
        if (l.child >= 0 && l.parent >= 0 && l.scale >= 0) scales.insert(l.scale);

    for (int n : scales) {
        UnionFind uf(n_nodes);
        std::vector<char> has_line(n_nodes, 0);
        for (const auto& l : lines) {
            if (l.child < 0 || l.parent < 0) continue;
            if (l.scale <= n) {
                uf.unite(l.child, l.parent);
                has_line[l.child] = has_line[l.parent] = 1;
            }
        }
        // group components and keep those whose max internal scale is exactly n
        std::map<int, std::vector<int>> comp;
        for (int v = 0; v < n_nodes; ++v)
            if (has_line[v]) comp[uf.find(v)].push_back(v);
        for (auto& [root, nodes] : comp) {
            int max_scale = -1;
            std::vector<char> in_c(n_nodes, 0);
            for (int v : nodes) in_c[v] = 1;
            for (const auto& l : lines) {
                if (l.child >= 0 && l.parent >= 0 && in_c[l.child] && in_c[l.parent])
                    max_scale = std::max(max_scale, l.scale);
            }
            if (max_scale != n) continue;
            ClusterInfo c;
            c.nodes = nodes;
            c.scale = n;
            classify(lines, c, in_c);
            rep.clusters.push_back(std::move(c));
        }
    }

    for (const auto& c : rep.clusters)
        if (c.self_energy_gap && c.exiting >= 0) rep.resonant[c.exiting] = 1;

    if (with_fakes) {
        // comparable line pairs (exit candidate l, enter candidate l') with
        // equal momenta and the near-miss scale pattern (n, n+1)/(n+1, n).
        auto ancestors_of = [&](int node) {
            std::vector<char> anc(n_nodes, 0);
            // walk up via parent pointers embedded in the line list
            int cur = node;
            while (cur >= 0) {
                anc[cur] = 1;
                int nxt = -1;
                for (const auto& l : lines)
                    if (l.child == cur) nxt = l.parent;
                cur = nxt;
            }
            return anc;
        };
        for (size_t li = 0; li < lines.size(); ++li) {
            const LineRef& lex = lines[li];
            if (lex.child < 0) continue;
            std::vector<char> below(n_nodes, 0);
            // nodes weakly below lex
            for (int v = 0; v < n_nodes; ++v) {
                auto anc = ancestors_of(v);
                if (anc[lex.child]) below[v] = 1;
            }
            for (size_t lj = 0; lj < lines.size(); ++lj) {
                if (li == lj) continue;
                const LineRef& len = lines[lj];
                if (len.parent < 0 || !below[len.parent]) continue;
                if (len.child >= 0 && !below[len.child]) continue;
                if (len.child >= 0 && len.child == lex.child) continue;
                if (!same_momentum(lex, len)) continue;
                // subgraph strictly between the two lines
                std::vector<char> in_t(n_nodes, 0);
                bool nonempty = false;
                for (int v = 0; v < n_nodes; ++v) {
                    if (!below[v]) continue;
                    if (len.child >= 0) {
                        auto anc = ancestors_of(v);
                        if (anc[len.child]) continue;  // strictly below the entering line
                    }
                    in_t[v] = 1;
                    nonempty = true;
                }
                if (!nonempty) continue;
                int max_int = -1;
                for (const auto& l : lines)
                    if (l.child >= 0 && l.parent >= 0 && in_t[l.child] && in_t[l.parent])
                        max_int = std::max(max_int, l.scale);
                if (max_int < 0) continue;
                if (lex.scale == max_int && len.scale == max_int + 1)
                    rep.left_fake.push_back({static_cast<int>(li), static_cast<int>(lj), max_int});
                else if (len.scale == max_int && lex.scale == max_int + 1)
                    rep.right_fake.push_back({static_cast<int>(li), static_cast<int>(lj), max_int});
            }
        }
    }
    return rep;
}

int count_lines_on_scale(const std::vector<LineRef>& lines, int n) {
    int c = 0;
    for (const auto& l : lines)
        if (l.child >= 0 && l.scale >= n) ++c;
    return c;
}

int count_nonresonant_lines_on_scale(const std::vector<LineRef>& lines,
                                     const ClusterReport& report, int n) {
    int c = 0;
    for (size_t i = 0; i < lines.size(); ++i)
        if (lines[i].child >= 0 && lines[i].scale >= n && !report.resonant[i]) ++c;
    return c;
}

bool counting_bound_holds(long long count, long long mass, int m_n) {
    if (count <= 0) return true;
    if (m_n >= 62) return false;  // count >= 1 cannot satisfy an astronomically small bound
    // count * 2^{m_n} <= 4 * mass, all integer
    unsigned long long lhs = static_cast<unsigned long long>(count) << m_n;
    return lhs <= 4ULL * static_cast<unsigned long long>(mass);
}

long long counting_bound_slack(long long count, long long mass, int m_n) {
    long long bound = (m_n >= 62) ? 0 : static_cast<long long>((4ULL * mass) >> m_n);
    return bound - count;
}

}  // namespace qpr
