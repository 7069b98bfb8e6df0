#include "modcluster/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modcluster {

CoarseMergeState::CoarseMergeState(const Graph& g)
    : base_(&g), total_weight_(g.total_weight()) {
    if (total_weight_ <= 0.0)
        throw std::invalid_argument("degenerate graph: total weight is zero");
    const std::size_t n = g.vertex_count();
    head_.assign(n, kNone);
    degree_.resize(n);
    vertices_.assign(n, 1);
    neighbors_.assign(n, 0);
    parent_.resize(n);
    alive_.assign(n, true);
    live_ = n;
    for (VertexId v = 0; v < n; ++v) {
        degree_[v] = g.degree(v);
        parent_[v] = v;
    }

    // One record per undirected inter-vertex edge, threaded through both
    // endpoint lists. Self-edges count toward degrees but are never merge
    // candidates, so they stay out of the lists. Appending while u ascends
    // leaves every list sorted by neighbor id.
    edges_.reserve(g.edge_count());
    std::vector<std::uint32_t> tail(n, kNone);
    g.for_each_undirected_edge([&](VertexId u, VertexId v, double w) {
        if (u == v) return;
        const auto e = static_cast<std::uint32_t>(edges_.size());
        edges_.push_back({{u, v}, w, {kNone, kNone}, {kNone, kNone}});
        for (ClusterId c : {u, v}) {
            const int s = side(e, c);
            edges_[e].prev[s] = tail[c];
            if (tail[c] == kNone)
                head_[c] = e;
            else
                edges_[tail[c]].next[side(tail[c], c)] = e;
            tail[c] = e;
            ++neighbors_[c];
        }
    });
}

void CoarseMergeState::unlink(std::uint32_t e, ClusterId from) {
    const int s = side(e, from);
    const std::uint32_t p = edges_[e].prev[s];
    const std::uint32_t nx = edges_[e].next[s];
    if (p == kNone)
        head_[from] = nx;
    else
        edges_[p].next[side(p, from)] = nx;
    if (nx != kNone) edges_[nx].prev[side(nx, from)] = p;
    --neighbors_[from];
}

ClusterId CoarseMergeState::find_root(ClusterId c) const {
    ClusterId root = c;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[c] != root) {
        const ClusterId up = parent_[c];
        parent_[c] = root;
        c = up;
    }
    return root;
}

double CoarseMergeState::pair_weight(ClusterId c, ClusterId d) const {
    const ClusterId a = neighbors_[c] <= neighbors_[d] ? c : d;
    const ClusterId b = a == c ? d : c;
    for (std::uint32_t e = head_[a]; e != kNone; e = edges_[e].next[side(e, a)]) {
        const ClusterId o = other_end(e, a);
        if (o == b) return edges_[e].w;
        if (o > b) break;
    }
    return 0.0;
}

ClusterPairInfo CoarseMergeState::pair_info(ClusterId c, ClusterId d) const {
    ClusterPairInfo info;
    info.weight_between = pair_weight(c, d);
    info.degree_c = degree_[c];
    info.degree_d = degree_[d];
    info.vertices_c = vertices_[c];
    info.vertices_d = vertices_[d];
    info.neighbors_c = neighbors_[c];
    info.neighbors_d = neighbors_[d];
    info.total_weight = total_weight_;
    return info;
}

CoarseMergeState::MergeOutcome CoarseMergeState::merge(ClusterId c, ClusterId d) {
    if (c == d) throw std::invalid_argument("cannot merge a cluster with itself");
    if (c >= alive_.size() || d >= alive_.size() || !alive_[c] || !alive_[d])
        throw std::invalid_argument("merge endpoint is not a live cluster");

    // Shorter edge list splices into the longer; ties keep the smaller id.
    ClusterId keep;
    if (neighbors_[c] != neighbors_[d])
        keep = neighbors_[c] > neighbors_[d] ? c : d;
    else
        keep = std::min(c, d);
    const ClusterId lose = keep == c ? d : c;

    // Drop the connecting edge; it becomes internal weight.
    std::uint32_t conn = kNone;
    for (std::uint32_t e = head_[lose]; e != kNone; e = edges_[e].next[side(e, lose)]) {
        const ClusterId o = other_end(e, lose);
        if (o == keep) {
            conn = e;
            break;
        }
        if (o > keep) break;
    }
    if (conn == kNone) throw std::invalid_argument("merge requires adjacent clusters");
    unlink(conn, keep);
    unlink(conn, lose);

    // Sorted-merge walk over both lists.
    MergeOutcome outcome{keep, lose, {}};
    std::uint32_t cursor = head_[keep];
    std::uint32_t prev_cursor = kNone;
    std::uint32_t e = head_[lose];
    while (e != kNone) {
        const int s_lose = side(e, lose);
        const std::uint32_t next_e = edges_[e].next[s_lose];
        const ClusterId x = other_end(e, lose);
        while (cursor != kNone && other_end(cursor, keep) < x) {
            prev_cursor = cursor;
            cursor = edges_[cursor].next[side(cursor, keep)];
        }
        if (cursor != kNone && other_end(cursor, keep) == x) {
            // Parallel edges fold into one; x loses a distinct neighbor.
            edges_[cursor].w += edges_[e].w;
            unlink(e, x);
            outcome.folded.push_back(x);
        } else {
            // Redirect the edge to keep and fix its slot in x's list, whose
            // sort key for this edge just changed from lose to keep.
            edges_[e].end[s_lose] = keep;
            {
                const int s = side(e, keep);
                edges_[e].prev[s] = prev_cursor;
                edges_[e].next[s] = cursor;
                if (prev_cursor == kNone)
                    head_[keep] = e;
                else
                    edges_[prev_cursor].next[side(prev_cursor, keep)] = e;
                if (cursor != kNone) edges_[cursor].prev[side(cursor, keep)] = e;
                ++neighbors_[keep];
            }
            prev_cursor = e;
            reposition(e, x, keep);
        }
        e = next_e;
    }

    head_[lose] = kNone;
    neighbors_[lose] = 0;
    degree_[keep] += degree_[lose];
    degree_[lose] = 0.0;
    vertices_[keep] += vertices_[lose];
    alive_[lose] = false;
    parent_[lose] = keep;
    --live_;
    return outcome;
}

void CoarseMergeState::reposition(std::uint32_t e, ClusterId x, ClusterId new_key) {
    const int s = side(e, x);
    const std::uint32_t before = edges_[e].prev[s];
    const std::uint32_t after = edges_[e].next[s];
    const bool ok_left = before == kNone || other_end(before, x) < new_key;
    const bool ok_right = after == kNone || other_end(after, x) > new_key;
    if (ok_left && ok_right) return;
    unlink(e, x);
    std::uint32_t lo, hi;  // insert between lo and hi
    if (!ok_right) {
        lo = after;
        hi = edges_[after].next[side(after, x)];
        while (hi != kNone && other_end(hi, x) < new_key) {
            lo = hi;
            hi = edges_[hi].next[side(hi, x)];
        }
    } else {
        hi = before;
        lo = edges_[before].prev[side(before, x)];
        while (lo != kNone && other_end(lo, x) > new_key) {
            hi = lo;
            lo = edges_[lo].prev[side(lo, x)];
        }
    }
    edges_[e].prev[s] = lo;
    edges_[e].next[s] = hi;
    if (lo == kNone)
        head_[x] = e;
    else
        edges_[lo].next[side(lo, x)] = e;
    if (hi != kNone) edges_[hi].prev[side(hi, x)] = e;
    ++neighbors_[x];
}

std::vector<ClusterId> CoarseMergeState::assignment() const {
    std::vector<ClusterId> out(base_->vertex_count());
    for (VertexId v = 0; v < out.size(); ++v) out[v] = find_root(v);
    return out;
}

Clustering CoarseMergeState::snapshot() const {
    const auto labels = assignment();
    return Clustering(*base_, labels);
}

MergeCandidateQueue::MergeCandidateQueue(CoarseMergeState& state, PrioritizerKind kind)
    : state_(&state), kind_(kind) {
    const std::size_t n = state.slot_count();
    best_partner_.assign(n, kNone);
    best_priority_.assign(n, 0.0);
    best_weight_.assign(n, 0.0);
    heap_pos_.assign(n, kNone);
    for (ClusterId c = 0; c < n; ++c)
        if (state.alive(c)) rescan(c);
}

double MergeCandidateQueue::priority_of(ClusterId c, ClusterId d, double w) const {
    ClusterPairInfo info;
    info.weight_between = w;
    info.degree_c = state_->degree(c);
    info.degree_d = state_->degree(d);
    info.vertices_c = state_->vertex_count_of(c);
    info.vertices_d = state_->vertex_count_of(d);
    info.neighbors_c = state_->neighbor_count_of(c);
    info.neighbors_d = state_->neighbor_count_of(d);
    info.total_weight = state_->total_weight();
    return merge_priority(kind_, info);
}

void MergeCandidateQueue::rescan(ClusterId c) {
    best_partner_[c] = kNone;
    state_->for_each_neighbor(c, [&](ClusterId d, double w) {
        const double p = priority_of(c, d, w);
        if (best_partner_[c] == kNone || p > best_priority_[c] ||
            (p == best_priority_[c] && d < best_partner_[c])) {
            best_partner_[c] = d;
            best_priority_[c] = p;
            best_weight_[c] = w;
        }
    });
    heap_fix(c);
}

void MergeCandidateQueue::improve_with(ClusterId c, ClusterId d, double w) {
    const double p = priority_of(c, d, w);
    if (best_partner_[c] == kNone || p > best_priority_[c] ||
        (p == best_priority_[c] && d < best_partner_[c])) {
        best_partner_[c] = d;
        best_priority_[c] = p;
        best_weight_[c] = w;
        heap_fix(c);
    }
}

bool MergeCandidateQueue::orders_before(ClusterId a, ClusterId b) const {
    if (best_priority_[a] != best_priority_[b]) return best_priority_[a] > best_priority_[b];
    const auto pa = std::minmax(a, best_partner_[a]);
    const auto pb = std::minmax(b, best_partner_[b]);
    if (pa != pb) return pa < pb;
    return a < b;
}

void MergeCandidateQueue::heap_set(std::size_t i, ClusterId c) {
    heap_[i] = c;
    heap_pos_[c] = static_cast<std::uint32_t>(i);
}

void MergeCandidateQueue::sift_up(std::size_t i) {
    while (i > 0) {
        const std::size_t p = (i - 1) / 2;
        if (!orders_before(heap_[i], heap_[p])) break;
        const ClusterId a = heap_[i], b = heap_[p];
        heap_set(i, b);
        heap_set(p, a);
        i = p;
    }
}

void MergeCandidateQueue::sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    while (true) {
        std::size_t best = i;
        const std::size_t l = 2 * i + 1, r = 2 * i + 2;
        if (l < n && orders_before(heap_[l], heap_[best])) best = l;
        if (r < n && orders_before(heap_[r], heap_[best])) best = r;
        if (best == i) break;
        const ClusterId a = heap_[i], b = heap_[best];
        heap_set(i, b);
        heap_set(best, a);
        i = best;
    }
}

void MergeCandidateQueue::heap_remove(ClusterId c) {
    const std::uint32_t pos = heap_pos_[c];
    if (pos == kNone) return;
    heap_pos_[c] = kNone;
    const ClusterId last = heap_.back();
    heap_.pop_back();
    if (pos < heap_.size()) {
        heap_set(pos, last);
        sift_up(pos);
        sift_down(pos);
    }
}

void MergeCandidateQueue::heap_fix(ClusterId c) {
    if (best_partner_[c] == kNone) {
        heap_remove(c);
        return;
    }
    if (heap_pos_[c] == kNone) {
        heap_.push_back(c);
        heap_pos_[c] = static_cast<std::uint32_t>(heap_.size() - 1);
        sift_up(heap_.size() - 1);
    } else {
        sift_up(heap_pos_[c]);
        sift_down(heap_pos_[c]);
    }
}

std::optional<MergeCandidateQueue::Candidate> MergeCandidateQueue::top() const {
    if (heap_.empty()) return std::nullopt;
    const ClusterId c = heap_[0];
    const ClusterId d = best_partner_[c];
    ClusterPairInfo info;
    info.weight_between = best_weight_[c];
    info.degree_c = state_->degree(c);
    info.degree_d = state_->degree(d);
    info.total_weight = state_->total_weight();
    return Candidate{std::min(c, d), std::max(c, d), best_priority_[c], pair_delta_q(info)};
}

CoarseMergeState::MergeOutcome MergeCandidateQueue::merge_top() {
    const auto t = top();
    if (!t) throw std::logic_error("merge_top on an empty candidate queue");
    const auto out = state_->merge(t->c, t->d);
    heap_remove(out.absorbed);
    best_partner_[out.absorbed] = kNone;
    rescan(out.survivor);
    // Degrees (and possibly pair weights) changed for every pair touching
    // the survivor; other pairs are unaffected...
    state_->for_each_neighbor(out.survivor, [&](ClusterId x, double w) {
        if (best_partner_[x] == t->c || best_partner_[x] == t->d)
            rescan(x);
        else
            improve_with(x, out.survivor, w);
    });
    // ...except under HE, where a folded parallel edge shrinks the common
    // neighbor's distinct-neighbor count and stales every pair touching it.
    if (kind_ == PrioritizerKind::HE) {
        for (ClusterId x : out.folded) {
            rescan(x);
            state_->for_each_neighbor(x, [&](ClusterId z, double w) {
                if (z == out.survivor) return;  // handled above
                if (best_partner_[z] == x)
                    rescan(z);
                else
                    improve_with(z, x, w);
            });
        }
    }
    return out;
}

Clustering single_step_greedy(const Graph& g, PrioritizerKind prioritizer,
                              const MergeObserver& observer) {
    CoarseMergeState state(g);
    MergeCandidateQueue queue(state, prioritizer);
    while (auto t = queue.top()) {
        if (!(t->delta_q > 0.0)) break;
        const auto out = queue.merge_top();
        if (observer &&
            !observer({out.survivor, out.absorbed, t->delta_q, t->priority,
                       state.cluster_count()}))
            break;
    }
    return state.snapshot();
}

Clustering multi_step_greedy(const Graph& g, PrioritizerKind prioritizer,
                             double merge_fraction_percent, const MergeObserver& observer) {
    if (!(merge_fraction_percent > 0.0) || merge_fraction_percent > 100.0)
        throw std::invalid_argument("merge fraction must be in (0, 100]");
    CoarseMergeState state(g);

    struct Cand {
        double priority;
        ClusterId c, d;
        double delta_q;
    };
    std::vector<Cand> cands;
    std::vector<std::uint32_t> stamp(state.slot_count(), 0);
    std::uint32_t round = 0;
    bool stopped = false;
    while (!stopped) {
        // Snapshot of the improving pairs, ranked once per round.
        cands.clear();
        state.for_each_pair([&](ClusterId c, ClusterId d, double w) {
            ClusterPairInfo info;
            info.weight_between = w;
            info.degree_c = state.degree(c);
            info.degree_d = state.degree(d);
            info.vertices_c = state.vertex_count_of(c);
            info.vertices_d = state.vertex_count_of(d);
            info.neighbors_c = state.neighbor_count_of(c);
            info.neighbors_d = state.neighbor_count_of(d);
            info.total_weight = state.total_weight();
            const double dq = pair_delta_q(info);
            if (dq > 0.0) cands.push_back({merge_priority(prioritizer, info), c, d, dq});
        });
        if (cands.empty()) break;
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.priority != b.priority) return a.priority > b.priority;
            if (a.c != b.c) return a.c < b.c;
            return a.d < b.d;
        });
        const auto l = static_cast<std::size_t>(
            std::ceil(merge_fraction_percent / 100.0 * static_cast<double>(cands.size())));
        const std::size_t take = std::min(l, cands.size());
        ++round;
        for (std::size_t i = 0; i < take; ++i) {
            const Cand& cd = cands[i];
            // Skipped pairs are not replaced by lower-ranked ones.
            if (!state.alive(cd.c) || !state.alive(cd.d)) continue;
            if (stamp[cd.c] == round || stamp[cd.d] == round) continue;
            const auto out = state.merge(cd.c, cd.d);
            stamp[cd.c] = round;
            stamp[cd.d] = round;
            if (observer &&
                !observer({out.survivor, out.absorbed, cd.delta_q, cd.priority,
                           state.cluster_count()})) {
                stopped = true;
                break;
            }
        }
    }
    return state.snapshot();
}

}  // namespace modcluster
