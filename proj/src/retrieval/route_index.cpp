#include "retro/retrieval/route_index.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "retro/chem/canonical.hpp"
#include "retro/chem/smiles.hpp"
#include "retro/util/text_io.hpp"

namespace retro::retrieval {

using nlohmann::json;

RouteIndex RouteIndex::build(std::vector<RouteRecord> records, int radius) {
  RouteIndex index;
  index.records_ = std::move(records);
  index.radius_ = radius;
  return index;
}

RouteIndex RouteIndex::load_jsonl(const std::string& path, LoadDiagnostics* diag,
                                  int radius) {
  std::vector<RouteRecord> records;
  LoadDiagnostics local;
  std::int64_t next_id = 0;
  bool opened = for_each_line(path, [&](std::string&& line) {
    if (line.empty())
      return;
    auto obj = json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.contains("target") || !obj.contains("route")) {
      local.bad_lines += 1;
      return;
    }
    try {
      RouteRecord rec;
      auto target_graph = chem::parse_smiles(obj["target"].get<std::string>());
      rec.target = chem::canonicalize(target_graph);
      rec.fingerprint = chem::morgan_fingerprint(target_graph, radius);
      for (const auto& step : obj["route"]) {
        ReactionStep rs;
        rs.product = chem::canonical_key(step.at("product").get<std::string>());
        for (const auto& r : step.at("reactants"))
          rs.reactants.push_back(chem::canonical_key(r.get<std::string>()));
        std::sort(rs.reactants.begin(), rs.reactants.end());
        rs.reactants.erase(std::unique(rs.reactants.begin(), rs.reactants.end()),
                           rs.reactants.end());
        if (step.contains("template"))
          rs.reaction_template = step["template"].get<std::string>();
        rec.route.push_back(std::move(rs));
      }
      if (rec.route.empty()) {
        local.bad_lines += 1;
        return;
      }
      rec.source_id = next_id++;
      records.push_back(std::move(rec));
      local.records += 1;
    } catch (const std::exception&) {
      local.bad_lines += 1;
    }
  });
  if (!opened)
    throw std::runtime_error("cannot open route database: " + path);
  if (diag)
    *diag = local;
  return build(std::move(records), radius);
}

std::vector<RouteRecord> RouteIndex::retrieve_top_k(const MoleculeKey& query, int k) const {
  if (k <= 0 || records_.empty())
    return {};
  Fingerprint qfp = chem::morgan_fingerprint(chem::parse_smiles(query.smiles), radius_);

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i)
    scored.emplace_back(chem::tanimoto(qfp, records_[i].fingerprint), i);

  auto better = [&](const auto& x, const auto& y) {
    if (x.first != y.first)
      return x.first > y.first;
    return records_[x.second].source_id < records_[y.second].source_id;
  };
  std::size_t take = std::min<std::size_t>(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(), better);

  std::vector<RouteRecord> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i)
    out.push_back(records_[scored[i].second]);
  return out;
}

std::string format_examples(const std::vector<RouteRecord>& records) {
  // Lists are rendered as quoted JSON arrays: quoting keeps bracket atoms
  // like [Na+] from being misread as list syntax when the text is parsed
  // back, so rendered examples round-trip exactly.
  auto render_list = [](const std::vector<std::string>& items) {
    return json(items).dump();
  };

  std::string out;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const RouteRecord& rec = records[r];
    if (r > 0)
      out += "\n\n";

    // The molecule set starts at the target and is rewritten step by step,
    // mirroring the output format the prompt demands.
    std::vector<std::string> molecule_set{rec.target.smiles};

    out += "<ROUTE>\n[\n";
    for (std::size_t s = 0; s < rec.route.size(); ++s) {
      const ReactionStep& step = rec.route[s];
      std::string before = render_list(molecule_set);

      std::vector<std::string> updated;
      for (const auto& m : molecule_set)
        if (m != step.product.smiles)
          updated.push_back(m);
      for (const auto& reactant : step.reactants)
        if (std::find(updated.begin(), updated.end(), reactant.smiles) == updated.end())
          updated.push_back(reactant.smiles);

      std::vector<std::string> reactants;
      for (const auto& reactant : step.reactants)
        reactants.push_back(reactant.smiles);

      out += "    {\n";
      out += "        'Molecule set': " + before + ",\n";
      out += "        'Product': " + render_list({step.product.smiles}) + ",\n";
      if (!step.reaction_template.empty())
        out += "        'Reaction': " + json(step.reaction_template).dump() + ",\n";
      out += "        'Reactants': " + render_list(reactants) + ",\n";
      out += "        'Updated molecule set': " + render_list(updated) + "\n";
      out += s + 1 < rec.route.size() ? "    },\n" : "    }\n";
      molecule_set = std::move(updated);
    }
    out += "]\n</ROUTE>";
  }
  return out;
}

}  // namespace retro::retrieval
