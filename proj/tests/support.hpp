#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mdi/declarations.hpp"
#include "mdi/features.hpp"
#include "mdi/hierarchy.hpp"
#include "mdi/systemic.hpp"

namespace mdi::testing {

inline std::string data_path(const std::string& name) {
  return std::string(MDI_TEST_DATA) + "/" + name;
}

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Hierarchy hpsg() {
  return Hierarchy::build(parse_declarations(read_data("hpsg.decl"), "hpsg.decl"));
}

inline Network pronoun_network() {
  return parse_network(read_data("pronoun.sysnet"), "pronoun.sysnet");
}

inline Hierarchy build(std::string_view text) {
  return Hierarchy::build(parse_declarations(text));
}

inline TypeConj conj(const Hierarchy& h, std::string_view text) { return parse_conj(h, text); }

/// Random valid hierarchy: at most `max_types` types, at most three
/// dimensions per type, and at most one type with two parents.
struct RandomHierarchy {
  /// Dimensions grouped by parent, parents in creation order.
  std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> parents;

  /// `p > [a,b] * [c].`
  std::string product_text() const {
    std::string out;
    for (const auto& [p, dims] : parents) {
      out += p + " > ";
      for (std::size_t d = 0; d < dims.size(); ++d) {
        out += d ? " * [" : "[";
        for (std::size_t i = 0; i < dims[d].size(); ++i) out += (i ? "," : "") + dims[d][i];
        out += "]";
      }
      out += ".\n";
    }
    return out;
  }

  /// One declaration per dimension.
  std::string split_text() const {
    std::string out;
    for (const auto& [p, dims] : parents) {
      for (const auto& dim : dims) {
        out += p + " > [";
        for (std::size_t i = 0; i < dim.size(); ++i) out += (i ? "," : "") + dim[i];
        out += "].\n";
      }
    }
    return out;
  }
};

inline RandomHierarchy random_hierarchy_spec(std::mt19937& rng, int max_types = 15) {
  auto pick = [&rng](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  for (;;) {
    const int n = 2 + static_cast<int>(pick(static_cast<std::size_t>(max_types - 1)));
    std::vector<std::string> names{"t0"};
    // dims[t] = dimensions of type t (indices into names).
    std::vector<std::vector<std::vector<int>>> dims(1);
    for (int i = 1; i < n; ++i) {
      names.push_back("t" + std::to_string(i));
      dims.emplace_back();
      int p = static_cast<int>(pick(static_cast<std::size_t>(i)));
      auto& pd = dims[p];
      if (pd.empty() || (pd.size() < 3 && pick(3) == 0)) {
        pd.push_back({i});
      } else {
        pd[pick(pd.size())].push_back(i);
      }
    }
    // Optional diamond: give one type a second parent. Candidates that
    // would be cyclic, redundant or inconsistent are retried.
    const bool diamond = n >= 4 && pick(2) == 0;
    auto render = [&](const std::vector<std::vector<std::vector<int>>>& ds) {
      RandomHierarchy out;
      for (int t = 0; t < n; ++t) {
        if (ds[t].empty()) continue;
        std::vector<std::vector<std::string>> named;
        for (const auto& d : ds[t]) {
          named.emplace_back();
          for (int m : d) named.back().push_back(names[m]);
        }
        out.parents.emplace_back(names[t], std::move(named));
      }
      return out;
    };
    auto valid = [](const RandomHierarchy& r) {
      try {
        return build(r.product_text()).warnings().empty();
      } catch (const Error&) {
        return false;
      }
    };
    for (int attempt = 0; diamond && attempt < 30; ++attempt) {
      auto trial = dims;
      int child = 1 + static_cast<int>(pick(static_cast<std::size_t>(n - 1)));
      int other = static_cast<int>(pick(static_cast<std::size_t>(n)));
      auto& od = trial[other];
      if (od.empty() || (od.size() < 3 && pick(2) == 0)) {
        od.push_back({child});
      } else {
        od[pick(od.size())].push_back(child);
      }
      RandomHierarchy r = render(trial);
      if (valid(r)) return r;
    }
    if (!diamond) return render(dims);
  }
}

inline Hierarchy random_hierarchy(std::mt19937& rng, int max_types = 15) {
  return build(random_hierarchy_spec(rng, max_types).product_text());
}

inline std::vector<TypeConj> all_conjunctions(const Hierarchy& h, std::size_t max_size) {
  std::vector<TypeConj> out;
  std::vector<TypeId> cur;
  const auto types = h.types();
  auto rec = [&](auto& self, std::size_t start) -> void {
    if (consistent(h, cur)) out.push_back(TypeConj::normalize(h, cur));
    if (cur.size() == max_size) return;
    for (std::size_t i = start; i < types.size(); ++i) {
      cur.push_back(types[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mdi::testing
