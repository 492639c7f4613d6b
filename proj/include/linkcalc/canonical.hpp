#pragma once

// Canonical keys for link diagrams: the lexicographically minimal signed
// multi-component Gauss encoding over all traversal starting points and
// component orders. Two diagrams related by arc relabeling and component
// renumbering produce identical keys. A marked variant keeps one component
// distinguishable, for searches whose target names a specific component.

#include <cstdint>
#include <limits>

#include "pd.hpp"

namespace linkcalc {

struct CanonicalKey {
  std::string bytes;
  bool operator==(const CanonicalKey& o) const { return bytes == o.bytes; }
  bool operator!=(const CanonicalKey& o) const { return bytes != o.bytes; }
  bool operator<(const CanonicalKey& o) const { return bytes < o.bytes; }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string h;
    h.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
      h.push_back(digits[c >> 4]);
      h.push_back(digits[c & 15]);
    }
    return h;
  }
};

namespace detail {

// Per-arc head data for one component: (crossing, under?, sign).
struct Step {
  int crossing;
  int8_t under;
  int8_t sign;
};

class KeyMinimizer {
public:
  KeyMinimizer(const LinkDiagram& d, int marked) : d_(d), marked_(marked) {
    Arc max_arc = 0;
    for (const auto& x : d.crossings)
      for (Arc a : x.s) max_arc = std::max(max_arc, a);
    std::vector<ArcEnd> head(max_arc + 1, ArcEnd{});
    for (int c = 0; c < d.num_crossings(); ++c)
      for (int t = 0; t < 4; ++t)
        if (d.crossings[c].is_in_slot(t)) head[d.crossings[c].s[t]] = {c, t};
    for (int i = 0; i < d.num_components(); ++i) {
      Arc first = d.components[i][0];
      if (d.components[i].size() == 1 && (first > max_arc || head[first].crossing < 0)) {
        ++loop_count_;
        if (i == marked) marked_is_loop_ = true;
        continue;
      }
      std::vector<Step> steps;
      for (Arc a : d.components[i]) {
        ArcEnd h = head[a];
        steps.push_back({h.crossing, static_cast<int8_t>(h.slot == 0 ? 1 : 0),
                         static_cast<int8_t>(d.crossings[h.crossing].sign())});
      }
      comps_.push_back(std::move(steps));
      comp_marked_.push_back(i == marked);
    }
  }

  std::vector<int32_t> minimize() {
    best_.clear();
    have_best_ = false;
    stream_.clear();
    stream_.push_back(static_cast<int32_t>(comps_.size()));
    stream_.push_back(d_.num_crossings());
    stream_.push_back(loop_count_);
    stream_.push_back(marked_is_loop_ ? 1 : 0);
    number_.assign(d_.num_crossings(), -1);
    used_.assign(comps_.size(), false);
    next_number_ = 0;
    dfs(0, /*less=*/!have_best_);
    return best_;
  }

private:
  // Branch and bound over (component order, start arc) choices. `less` says
  // the emitted prefix is strictly below the incumbent best; it is reset to
  // "equal" whenever a descendant replaces the incumbent, because the new
  // best then shares this frame's prefix. Returns true if the incumbent was
  // replaced somewhere in this subtree.
  bool dfs(size_t done, bool less) {
    if (done == comps_.size()) {
      if (!have_best_ || less || stream_ < best_) {
        best_ = stream_;
        have_best_ = true;
        return true;
      }
      return false;
    }
    bool replaced_any = false;
    for (size_t ci = 0; ci < comps_.size(); ++ci) {
      if (used_[ci]) continue;
      const auto& steps = comps_[ci];
      for (size_t start = 0; start < steps.size(); ++start) {
        size_t save_len = stream_.size();
        int save_next = next_number_;
        std::vector<int> touched;
        bool sub_less = less;
        bool abort = false;
        auto push = [&](int32_t v) {
          if (abort) return;
          if (!sub_less && have_best_) {
            if (stream_.size() >= best_.size() || v > best_[stream_.size()]) {
              abort = true;
              return;
            }
            if (v < best_[stream_.size()]) sub_less = true;
          }
          stream_.push_back(v);
        };
        push(-9);
        push(static_cast<int32_t>(steps.size()));
        push(comp_marked_[ci] ? 1 : 0);
        for (size_t t = 0; !abort && t < steps.size(); ++t) {
          const Step& st = steps[(start + t) % steps.size()];
          if (number_[st.crossing] < 0) {
            number_[st.crossing] = next_number_++;
            touched.push_back(st.crossing);
          }
          push(number_[st.crossing]);
          push(st.under);
          push(st.sign);
        }
        if (!abort) {
          used_[ci] = true;
          if (dfs(done + 1, sub_less)) {
            replaced_any = true;
            less = false;  // new incumbent shares this frame's prefix
          }
          used_[ci] = false;
        }
        stream_.resize(save_len);
        next_number_ = save_next;
        for (int c : touched) number_[c] = -1;
      }
    }
    return replaced_any;
  }

  const LinkDiagram& d_;
  int marked_;
  std::vector<std::vector<Step>> comps_;
  std::vector<bool> comp_marked_;
  int loop_count_ = 0;
  bool marked_is_loop_ = false;

  std::vector<int32_t> stream_, best_;
  bool have_best_ = false;
  std::vector<int> number_;
  std::vector<bool> used_;
  int next_number_ = 0;
};

inline CanonicalKey pack_key(const std::vector<int32_t>& v) {
  CanonicalKey k;
  k.bytes.resize(v.size() * 4);
  for (size_t i = 0; i < v.size(); ++i) {
    uint32_t u = static_cast<uint32_t>(v[i]);
    k.bytes[4 * i] = static_cast<char>(u & 0xff);
    k.bytes[4 * i + 1] = static_cast<char>((u >> 8) & 0xff);
    k.bytes[4 * i + 2] = static_cast<char>((u >> 16) & 0xff);
    k.bytes[4 * i + 3] = static_cast<char>((u >> 24) & 0xff);
  }
  return k;
}

}  // namespace detail

inline CanonicalKey canonical_key(const LinkDiagram& d) {
  detail::KeyMinimizer m(d, -1);
  return detail::pack_key(m.minimize());
}

// Key with component `marked` distinguished from the others.
inline CanonicalKey canonical_key_marked(const LinkDiagram& d, int marked) {
  detail::KeyMinimizer m(d, marked);
  return detail::pack_key(m.minimize());
}

}  // namespace linkcalc
