#include "routeq/braess_minor.h"

#include <functional>
#include <set>

#include "routeq/error.h"

namespace routeq {

Network BraessNetwork() {
  return Network({"s", "t", "u", "v"}, {{"su", "s", "u"},
                                        {"ut", "u", "t"},
                                        {"uv", "u", "v"},
                                        {"sv", "s", "v"},
                                        {"vt", "v", "t"}});
}

namespace {

struct Leg {
  std::size_t from;
  std::size_t to;
};

class MinorSearch {
 public:
  MinorSearch(const Network& net, std::size_t cap) : net_(net), cap_(cap) {
    // Reachability closure for cheap pruning.
    std::size_t n = net.num_vertices();
    reach_.assign(n, std::vector<char>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> stack{a};
      reach_[a][a] = 1;
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t e : net.OutEdges(x)) {
          std::size_t y = net.HeadIndex(e);
          if (!reach_[a][y]) {
            reach_[a][y] = 1;
            stack.push_back(y);
          }
        }
      }
    }
  }

  // Legs: host s -> a, a -> b, b -> d, b -> c, a -> c, c -> d, d -> host t.
  std::optional<std::vector<std::vector<std::size_t>>> Try(
      std::size_t hs, std::size_t ht, std::size_t a, std::size_t b,
      std::size_t c, std::size_t d) {
    legs_ = {{hs, a}, {a, b}, {b, d}, {b, c}, {a, c}, {c, d}, {d, ht}};
    for (const Leg& l : legs_) {
      if (!reach_[l.from][l.to]) return std::nullopt;
    }
    blocked_.assign(net_.num_vertices(), 0);
    for (std::size_t x : {hs, ht, a, b, c, d}) blocked_[x] = 1;
    chosen_.assign(legs_.size(), {});
    steps_ = 0;
    if (Place(0)) return chosen_;
    return std::nullopt;
  }

 private:
  bool Place(std::size_t leg) {
    if (leg == legs_.size()) return true;
    const Leg& l = legs_[leg];
    if (l.from == l.to) {
      chosen_[leg].clear();
      return Place(leg + 1);
    }
    std::vector<std::size_t> stack;
    std::function<bool(std::size_t)> dfs = [&](std::size_t x) -> bool {
      if (++steps_ > cap_ * 16) {
        throw Error(ErrorCode::kPathExplosion,
                    "Braess minor search exceeded its budget");
      }
      for (std::size_t e : net_.OutEdges(x)) {
        std::size_t y = net_.HeadIndex(e);
        if (y == l.to) {
          stack.push_back(e);
          chosen_[leg] = stack;
          if (Place(leg + 1)) return true;
          stack.pop_back();
          continue;
        }
        if (blocked_[y]) continue;
        blocked_[y] = 1;
        stack.push_back(e);
        bool ok = dfs(y);
        stack.pop_back();
        blocked_[y] = 0;
        if (ok) return true;
      }
      return false;
    };
    return dfs(l.from);
  }

  const Network& net_;
  std::size_t cap_;
  std::vector<std::vector<char>> reach_;
  std::vector<Leg> legs_;
  std::vector<char> blocked_;
  std::vector<std::vector<std::size_t>> chosen_;
  std::size_t steps_ = 0;
};

}  // namespace

std::optional<BraessMinor> FindBraessMinor(const Network& net,
                                           const VertexId& s,
                                           const VertexId& t,
                                           std::size_t cap) {
  auto si = net.VertexIndex(s);
  auto ti = net.VertexIndex(t);
  if (!si || !ti || *si == *ti) {
    throw Error(ErrorCode::kInvalidNetwork,
                "minor search needs distinct existing terminals");
  }
  std::size_t n = net.num_vertices();
  // Candidate orders for the outer branch vertices: host terminal first.
  std::vector<std::size_t> firsts{*si}, lasts{*ti};
  for (std::size_t x = 0; x < n; ++x) {
    if (x != *si && x != *ti) {
      firsts.push_back(x);
      lasts.push_back(x);
    }
  }
  MinorSearch search(net, cap);
  auto ids = [&net](const std::vector<std::size_t>& idx) {
    Path p;
    for (std::size_t e : idx) p.push_back(net.edges()[e].id);
    return p;
  };
  for (std::size_t a : firsts) {
    for (std::size_t d : lasts) {
      if (a == d) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a || b == d || b == *si || b == *ti) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == a || c == b || c == d || c == *si || c == *ti) continue;
          auto legs = search.Try(*si, *ti, a, b, c, d);
          if (!legs) continue;
          BraessMinor m;
          m.s = net.vertices()[a];
          m.u = net.vertices()[b];
          m.v = net.vertices()[c];
          m.t = net.vertices()[d];
          m.head = ids((*legs)[0]);
          m.image["su"] = ids((*legs)[1]);
          m.image["ut"] = ids((*legs)[2]);
          m.image["uv"] = ids((*legs)[3]);
          m.image["sv"] = ids((*legs)[4]);
          m.image["vt"] = ids((*legs)[5]);
          m.tail = ids((*legs)[6]);
          return m;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace routeq
