#include <algorithm>
#include <cctype>

#include "weylpain/data_dir.hpp"
#include "weylpain/transforms.hpp"

namespace weylpain {

namespace fs = std::filesystem;

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      unsigned long x = std::stoul(a.substr(i, i2 - i)), y = std::stoul(b.substr(j, j2 - j));
      if (x != y) return x < y;
      i = i2;
      j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

const BirationalMap& Catalog::get(const std::string& name) const {
  auto it = maps_.find(name);
  if (it == maps_.end()) throw Error(ErrorCode::Precondition, "no map '" + name + "' in the " + system_ + " catalog");
  return it->second;
}

std::vector<std::string> Catalog::names(const std::string& kind) const {
  std::vector<std::string> out;
  for (const auto& [n, m] : maps_)
    if (m.kind == kind) out.push_back(n);
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

std::vector<std::string> Catalog::all_names() const {
  std::vector<std::string> out;
  for (const auto& [n, m] : maps_) out.push_back(n);
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

void Catalog::add(BirationalMap m) {
  std::string n = m.name;
  maps_.insert_or_assign(n, std::move(m));
}

Catalog load_catalog(const std::string& system, const fs::path& dir, VarTablePtr table) {
  SystemInfo info = system_info(system, dir);
  if (!table) table = VarTable::standard(info.alpha_count);
  ParameterRelation rel = parse_relation(read_file(dir / "systems" / system / "relation.txt"));
  Catalog cat(system, table, rel);
  fs::path d = dir / "transforms" / system;
  if (!fs::is_directory(d)) return cat;
  std::vector<BirationalMap> staged;
  for (const auto& e : fs::directory_iterator(d)) {
    if (e.path().extension() != ".map") continue;
    std::string name = e.path().stem().string();
    BirationalMap m = parse_map(name, read_file(e.path()), table, info.alpha_count);
    if (m.stages.empty())
      cat.add(std::move(m));
    else
      staged.push_back(std::move(m));
  }
  // staged charts: the composite is cached, the stages are kept for checking
  for (auto& m : staged) {
    std::vector<std::shared_ptr<const BirationalMap>> stages;
    for (const auto& ph : m.stages) stages.push_back(std::make_shared<BirationalMap>(cat.get(ph->name)));
    BirationalMap c = *stages.front();
    for (std::size_t i = 1; i < stages.size(); ++i) c = compose(c, *stages[i], &rel);
    c.name = m.name;
    c.kind = m.kind;
    c.target_system = m.target_system;
    c.stages = std::move(stages);
    if (c.inverse) {
      auto inv = std::make_shared<BirationalMap>(*c.inverse);
      inv->name = m.name + "^-1";
      c.inverse = inv;
    }
    cat.add(std::move(c));
  }
  return cat;
}

Catalog load_catalog(const std::string& system) { return load_catalog(system, data_dir()); }

}  // namespace weylpain
