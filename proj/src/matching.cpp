#include "pcc/matching.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <ostream>
#include <set>
#include <string>

#include "pcc/error.hpp"

namespace pcc {

WeightedMatchGraph::WeightedMatchGraph(int num_vertices,
                                       std::vector<MatchEdge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices < 0) throw InvalidModel("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (const MatchEdge& e : edges_) {
    if (e.u == e.v) {
      throw InvalidModel("matching graph self-loop at " + std::to_string(e.u));
    }
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices || e.v >= num_vertices) {
      throw InvalidModel("matching edge references a missing vertex");
    }
    if (e.w > kMaxMatchWeight || e.w < -kMaxMatchWeight) {
      throw RangeError("matching weight out of range");
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw InvalidModel("duplicate matching edge (" + std::to_string(e.u) +
                         ", " + std::to_string(e.v) + ")");
    }
  }
}

void WeightedMatchGraph::set_weights(std::span<const Weight> weights) {
  if (weights.size() != edges_.size()) {
    throw DimensionError("weight vector does not match edge count");
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (weights[k] > kMaxMatchWeight || weights[k] < -kMaxMatchWeight) {
      throw RangeError("matching weight out of range");
    }
    edges_[k].w = weights[k];
  }
}

bool WeightedMatchGraph::same_topology(const WeightedMatchGraph& other) const {
  if (num_vertices_ != other.num_vertices_ ||
      edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (edges_[k].u != other.edges_[k].u || edges_[k].v != other.edges_[k].v) {
      return false;
    }
  }
  return true;
}

void write_dimacs(std::ostream& out, const WeightedMatchGraph& graph) {
  out << "p edge " << graph.num_vertices() << ' ' << graph.edges().size()
      << '\n';
  for (const MatchEdge& e : graph.edges()) {
    out << "e " << e.u << ' ' << e.v << ' ' << e.w << '\n';
  }
}

namespace {

// Primal-dual blossom algorithm in the formulation of Galil (1986), solving
// maximum-weight maximum-cardinality matching on weights -w. Vertex duals
// are stored doubled so that slack(k) = dual[u] + dual[v] - 2 * wt[k] stays
// integral; S-S slacks are even as long as all vertex duals start even.
//
// Endpoint p in [0, 2m) is one side of edge p / 2; endpoint 2k is the
// first vertex, 2k + 1 the second, and p ^ 1 is the opposite side.
// Labels: 0 free, 1 S (outer), 2 T (inner), 5 marks a scanned S-blossom.
class BlossomEngine {
 public:
  explicit BlossomEngine(const WeightedMatchGraph& g)
      : n_(g.num_vertices()), m_(static_cast<int>(g.edges().size())) {
    endpoint_.resize(2 * m_);
    wt_.resize(m_);
    neighbend_.resize(n_);
    for (int k = 0; k < m_; ++k) {
      const MatchEdge& e = g.edges()[k];
      endpoint_[2 * k] = e.u;
      endpoint_[2 * k + 1] = e.v;
      neighbend_[e.u].push_back(2 * k + 1);
      neighbend_[e.v].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    dual_.assign(2 * n_, 0);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    blossomparent_.assign(2 * n_, -1);
    blossombase_.assign(2 * n_, -1);
    bestedge_.assign(2 * n_, -1);
    blossomchilds_.resize(2 * n_);
    blossomendps_.resize(2 * n_);
    blossombestedges_.resize(2 * n_);
    has_bbe_.assign(2 * n_, 0);
    bestedgeto_.assign(2 * n_, -1);
    allowedge_.assign(m_, 0);
    live_pos_.assign(2 * n_, -1);
    reset_blossoms();
  }

  int num_vertices() const { return n_; }

  void set_weights(const WeightedMatchGraph& g) {
    for (int k = 0; k < m_; ++k) wt_[k] = -g.edges()[k].w;
  }

  void cold_start() {
    reset_blossoms();
    std::fill(mate_.begin(), mate_.end(), -1);
    for (int v = 0; v < n_; ++v) {
      Weight best = 0;
      bool any = false;
      for (int p : neighbend_[v]) {
        const Weight w = wt_[p / 2];
        if (!any || w > best) best = w;
        any = true;
      }
      dual_[v] = round_up_even(best);
    }
    greedy_match();
  }

  // Keeps the matching and duals of the previous solve and repairs them for
  // the current weights. Blossom duals are folded into their vertices, which
  // leaves every internal edge exactly as tight as before. Duals are then
  // shifted within the slack of neighbouring edges so that as many matched
  // edges as possible stay tight.
  void warm_start() {
    std::vector<int> ls;
    for (int b : live_) {
      if (dual_[b] == 0) continue;
      leaves(b, ls);
      for (int v : ls) dual_[v] += dual_[b];
    }
    reset_blossoms();
    for (int k = 0; k < m_; ++k) {
      const Weight s = slack(k);
      if (s >= 0) continue;
      const int u = endpoint_[2 * k];
      const int v = endpoint_[2 * k + 1];
      if (mate_[u] == -1 || mate_[u] / 2 == k) {
        dual_[u] -= s;
      } else if (mate_[v] == -1) {
        dual_[v] -= s;
      } else {
        // Raise one side and pull its partner down by as much as it allows.
        const int x = endpoint_[mate_[u]];
        const int y = endpoint_[mate_[v]];
        const Weight rx = room(x, mate_[x] / 2);
        const Weight ry = room(y, mate_[y] / 2);
        const int side = rx >= ry ? u : v;
        const int partner = side == u ? x : y;
        dual_[side] -= s;
        dual_[partner] -= std::min(-s, side == u ? rx : ry);
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] == -1) continue;
      const int k = mate_[v] / 2;
      Weight s = slack(k);
      if (s == 0) continue;
      const int w = endpoint_[mate_[v]];
      dual_[v] -= std::min(s, room(v, k));
      s = slack(k);
      dual_[w] -= std::min(s, room(w, k));
      if (slack(k) != 0) {
        mate_[v] = -1;
        mate_[w] = -1;
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] == -1) dual_[v] = round_up_even(dual_[v]);
    }
    greedy_match();
  }

  // Returns false when the graph has no perfect matching.
  bool run() {
    for (;;) {
      std::fill(label_.begin(), label_.begin() + n_, 0);
      std::fill(bestedge_.begin(), bestedge_.begin() + n_, -1);
      for (int b : live_) {
        label_[b] = 0;
        bestedge_[b] = -1;
        blossombestedges_[b].clear();
        has_bbe_[b] = 0;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();
      bool any_free = false;
      for (int v = 0; v < n_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
          assign_label(v, 1, -1);
          any_free = true;
        }
      }
      if (!any_free) return true;

      bool augmented = false;
      for (;;) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          assert(label_[inblossom_[v]] == 1);
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            Weight kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = 1;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                bestedge_[b] = k;
              }
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                bestedge_[w] = k;
              }
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        Weight delta = 0;
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < n_; ++v) {
          const int e = bestedge_[v];
          if (e == -1) continue;
          const int top = inblossom_[v];
          if (label_[top] == 0) {
            const Weight d = slack(e);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = e;
            }
          } else if (top == v && label_[v] == 1) {
            const Weight d = slack(e) / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = e;
            }
          }
        }
        for (int b : live_) {
          if (blossomparent_[b] != -1) continue;
          if (label_[b] == 1 && bestedge_[b] != -1) {
            const Weight ks = slack(bestedge_[b]);
            assert(ks % 2 == 0);
            if (deltatype == -1 || ks / 2 < delta) {
              delta = ks / 2;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          } else if (label_[b] == 2 && (deltatype == -1 || dual_[b] < delta)) {
            delta = dual_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) return false;

        for (int v = 0; v < n_; ++v) {
          const int l = label_[inblossom_[v]];
          if (l == 1) {
            dual_[v] -= delta;
          } else if (l == 2) {
            dual_[v] += delta;
          }
        }
        for (int b : live_) {
          if (blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dual_[b] += delta;
            } else if (label_[b] == 2) {
              dual_[b] -= delta;
            }
          }
        }

        if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          int i = endpoint_[2 * deltaedge];
          if (label_[inblossom_[i]] == 0) i = endpoint_[2 * deltaedge + 1];
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          queue_.push_back(endpoint_[2 * deltaedge]);
        } else {
          expand_blossom(deltablossom, false);
        }
      }

      // Expanding removes entries from live_, so walk a copy.
      expand_scratch_ = live_;
      for (int b : expand_scratch_) {
        if (blossombase_[b] >= 0 && blossomparent_[b] == -1 &&
            label_[b] == 1 && dual_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }
  }

  const std::vector<int>& mate() const { return mate_; }

 private:
  static Weight round_up_even(Weight x) { return (x % 2 == 0) ? x : x + 1; }

  Weight slack(int k) const {
    return dual_[endpoint_[2 * k]] + dual_[endpoint_[2 * k + 1]] - 2 * wt_[k];
  }

  // How far dual[v] can drop before an edge other than `skip` goes tight.
  Weight room(int v, int skip) const {
    Weight r = std::numeric_limits<Weight>::max();
    for (int p : neighbend_[v]) {
      if (p / 2 != skip) r = std::min(r, slack(p / 2));
    }
    return r;
  }

  void reset_blossoms() {
    for (int v = 0; v < n_; ++v) {
      inblossom_[v] = v;
      blossombase_[v] = v;
    }
    for (int b : live_) {
      blossombase_[b] = -1;
      blossomchilds_[b].clear();
      blossomendps_[b].clear();
      blossombestedges_[b].clear();
      has_bbe_[b] = 0;
      dual_[b] = 0;
      label_[b] = 0;
      bestedge_[b] = -1;
      blossomparent_[b] = -1;
    }
    live_.clear();
    unused_.clear();
    for (int b = 2 * n_ - 1; b >= n_; --b) unused_.push_back(b);
    std::fill(blossomparent_.begin(), blossomparent_.begin() + n_, -1);
  }

  // Lowers each free vertex's dual until an edge becomes tight and matches
  // it along a tight edge to another free vertex when one exists.
  void greedy_match() {
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] != -1 || neighbend_[v].empty()) continue;
      Weight ms = slack(neighbend_[v].front() / 2);
      for (int p : neighbend_[v]) ms = std::min(ms, slack(p / 2));
      dual_[v] -= ms;
      for (int p : neighbend_[v]) {
        const int w = endpoint_[p];
        if (mate_[w] == -1 && slack(p / 2) == 0) {
          mate_[v] = p;
          mate_[w] = p ^ 1;
          break;
        }
      }
      // Free vertices must share even parity so S-S slacks stay even.
      if (mate_[v] == -1) dual_[v] = round_up_even(dual_[v]);
    }
  }

  void leaves(int b, std::vector<int>& out) const {
    out.clear();
    if (b < n_) {
      out.push_back(b);
      return;
    }
    std::vector<int>& stack = leaf_stack_;
    stack.assign(1, b);
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      if (t < n_) {
        out.push_back(t);
      } else {
        const auto& ch = blossomchilds_[t];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
      }
    }
  }

  void assign_label(int w, int t, int p) {
    for (;;) {
      const int b = inblossom_[w];
      assert(label_[w] == 0 && label_[b] == 0);
      label_[w] = label_[b] = t;
      labelend_[w] = labelend_[b] = p;
      bestedge_[w] = bestedge_[b] = -1;
      if (t == 1) {
        if (b < n_) {
          queue_.push_back(b);
        } else {
          leaves(b, label_scratch_);
          queue_.insert(queue_.end(), label_scratch_.begin(),
                        label_scratch_.end());
        }
        return;
      }
      const int base = blossombase_[b];
      assert(mate_[base] >= 0);
      const int mp = mate_[base];
      w = endpoint_[mp];
      t = 1;
      p = mp ^ 1;
    }
  }

  // Traces back from v and w to find either a common base (new blossom) or
  // two distinct roots (augmenting path, returns -1).
  int scan_blossom(int v, int w) {
    std::vector<int>& path = scan_path_;
    path.clear();
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      assert(label_[b] == 1);
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        assert(label_[b] == 2);
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = endpoint_[2 * k];
    int w = endpoint_[2 * k + 1];
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    live_pos_[b] = static_cast<int>(live_.size());
    live_.push_back(b);
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int>& path = blossomchilds_[b];
    std::vector<int>& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    assert(label_[bb] == 1);
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dual_[b] = 0;

    std::vector<int> ls;
    leaves(b, ls);
    for (int x : ls) {
      if (label_[inblossom_[x]] == 2) queue_.push_back(x);
      inblossom_[x] = b;
    }

    std::vector<int> touched;
    auto consider = [&](int e) {
      int j = endpoint_[2 * e + 1];
      if (inblossom_[j] == b) j = endpoint_[2 * e];
      const int bj = inblossom_[j];
      if (bj != b && label_[bj] == 1 &&
          (bestedgeto_[bj] == -1 || slack(e) < slack(bestedgeto_[bj]))) {
        if (bestedgeto_[bj] == -1) touched.push_back(bj);
        bestedgeto_[bj] = e;
      }
    };
    for (int sub : path) {
      if (!has_bbe_[sub]) {
        std::vector<int> sl;
        leaves(sub, sl);
        for (int x : sl) {
          for (int p : neighbend_[x]) consider(p / 2);
        }
      } else {
        for (int e : blossombestedges_[sub]) consider(e);
      }
      blossombestedges_[sub].clear();
      has_bbe_[sub] = 0;
      bestedge_[sub] = -1;
    }
    std::sort(touched.begin(), touched.end());
    auto& best = blossombestedges_[b];
    best.clear();
    for (int bj : touched) {
      best.push_back(bestedgeto_[bj]);
      bestedgeto_[bj] = -1;
    }
    has_bbe_[b] = 1;
    bestedge_[b] = -1;
    for (int e : best) {
      if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) {
        bestedge_[b] = e;
      }
    }
  }

  static int wrap(int j, int len) { return j < 0 ? j + len : j; }

  void expand_blossom(int b, bool endstage) {
    std::vector<int> ls;
    for (int s : blossomchilds_[b]) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dual_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        leaves(s, ls);
        for (int x : ls) inblossom_[x] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const std::vector<int>& childs = blossomchilds_[b];
      const std::vector<int>& endps = blossomendps_[b];
      const int len = static_cast<int>(childs.size());
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(
          std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endps[wrap(j - endptrick, len)] / 2] = 1;
        j += jstep;
        p = endps[wrap(j - endptrick, len)] ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      int bv = childs[wrap(j, len)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (childs[wrap(j, len)] != entrychild) {
        bv = childs[wrap(j, len)];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        leaves(bv, ls);
        int found = -1;
        for (int x : ls) {
          if (label_[x] != 0) {
            found = x;
            break;
          }
        }
        if (found != -1) {
          assert(label_[found] == 2);
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bbe_[b] = 0;
    bestedge_[b] = -1;
    const int moved = live_.back();
    live_[live_pos_[b]] = moved;
    live_pos_[moved] = live_pos_[b];
    live_.pop_back();
    unused_.push_back(b);
  }

  // Swaps matched and unmatched edges along the even path from v to the
  // base of blossom b, then makes v the new base.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    std::vector<int>& childs = blossomchilds_[b];
    std::vector<int>& endps = blossomendps_[b];
    const int len = static_cast<int>(childs.size());
    const int i = static_cast<int>(
        std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[wrap(j, len)];
      const int p = endps[wrap(j - endptrick, len)] ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = childs[wrap(j, len)];
      if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
    assert(blossombase_[b] == v);
  }

  void augment_matching(int k) {
    const int ends[2][2] = {{endpoint_[2 * k], 2 * k + 1},
                            {endpoint_[2 * k + 1], 2 * k}};
    for (const auto& sp : ends) {
      int s = sp[0];
      int p = sp[1];
      for (;;) {
        const int bs = inblossom_[s];
        assert(label_[bs] == 1);
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        assert(label_[bt] == 2);
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        assert(blossombase_[bt] == t);
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int n_;
  int m_;
  std::vector<int> endpoint_;
  std::vector<Weight> wt_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<Weight> dual_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<int> blossombase_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<char> has_bbe_;
  std::vector<int> bestedgeto_;
  std::vector<char> allowedge_;
  std::vector<int> unused_;
  std::vector<int> live_;  ///< blossoms currently in use
  std::vector<int> live_pos_;
  std::vector<int> expand_scratch_;
  std::vector<int> label_scratch_;
  std::vector<int> queue_;
  std::vector<int> scan_path_;
  mutable std::vector<int> leaf_stack_;
};

Matching extract(const WeightedMatchGraph& g, const std::vector<int>& mate) {
  Matching out;
  out.matched_edge.assign(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (mate[v] < 0) {
      throw NoPerfectMatching("vertex " + std::to_string(v) + " is unmatched");
    }
    const int k = mate[v] / 2;
    out.matched_edge[v] = k;
    const MatchEdge& e = g.edges()[k];
    if (v == std::min(e.u, e.v)) {
      out.pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
      out.total_weight += e.w;
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

void check_parity(const WeightedMatchGraph& g) {
  if (g.num_vertices() % 2 != 0) {
    throw NoPerfectMatching("odd number of vertices (" +
                            std::to_string(g.num_vertices()) + ")");
  }
}

}  // namespace

struct MatchingSolver::Impl {
  WeightedMatchGraph graph;
  std::unique_ptr<BlossomEngine> engine;
  Matching last;
  bool solved = false;

  Matching finish() {
    if (!engine->run()) {
      solved = false;
      throw NoPerfectMatching("graph has no perfect matching");
    }
    last = extract(graph, engine->mate());
    solved = true;
    return last;
  }
};

MatchingSolver::MatchingSolver() : impl_(std::make_unique<Impl>()) {}
MatchingSolver::~MatchingSolver() = default;
MatchingSolver::MatchingSolver(MatchingSolver&&) noexcept = default;
MatchingSolver& MatchingSolver::operator=(MatchingSolver&&) noexcept = default;

bool MatchingSolver::has_state() const { return impl_->solved; }

Matching MatchingSolver::solve(const WeightedMatchGraph& graph) {
  check_parity(graph);
  impl_->graph = graph;
  impl_->engine = std::make_unique<BlossomEngine>(graph);
  impl_->engine->set_weights(graph);
  impl_->engine->cold_start();
  return impl_->finish();
}

Matching MatchingSolver::rewarm_solve(const WeightedMatchGraph& graph,
                                      std::span<const int> changed_edges) {
  if (!impl_->engine) return solve(graph);
  if (!impl_->graph.same_topology(graph)) {
    throw InvalidRewarm("rewarm requires the topology of the previous solve");
  }
  const auto& old_edges = impl_->graph.edges();
  std::vector<char> listed(graph.edges().size(), 0);
  for (int k : changed_edges) {
    if (k < 0 || k >= static_cast<int>(graph.edges().size())) {
      throw InvalidRewarm("changed edge index out of range");
    }
    listed[k] = 1;
  }
  for (std::size_t k = 0; k < listed.size(); ++k) {
    if (!listed[k] && graph.edges()[k].w != old_edges[k].w) {
      throw InvalidRewarm("edge " + std::to_string(k) +
                          " changed but is not listed");
    }
  }
  if (changed_edges.empty() && impl_->solved) return impl_->last;
  impl_->graph = graph;
  impl_->engine->set_weights(graph);
  if (impl_->solved) {
    impl_->engine->warm_start();
  } else {
    impl_->engine->cold_start();
  }
  return impl_->finish();
}

Matching MatchingSolver::rewarm_solve(std::span<const Weight> weights) {
  if (!impl_->engine) {
    throw InvalidRewarm("no previous solve to rewarm from");
  }
  impl_->graph.set_weights(weights);
  impl_->engine->set_weights(impl_->graph);
  if (impl_->solved) {
    impl_->engine->warm_start();
  } else {
    impl_->engine->cold_start();
  }
  return impl_->finish();
}

Matching min_weight_perfect_matching(const WeightedMatchGraph& graph) {
  MatchingSolver solver;
  return solver.solve(graph);
}

}  // namespace pcc
