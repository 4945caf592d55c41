#include "csf/spec_io.hpp"

#include "csf/error.hpp"
#include "csf/partitions.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace csf {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void doc_fail(errc code, const std::string& message, const std::string& path) {
  fail(code, message, path);
}

const json& require_field(const json& node, const std::string& key, const std::string& path) {
  auto it = node.find(key);
  if (it == node.end()) doc_fail(errc::syntax_error, "missing field '" + key + "'", path);
  return *it;
}

std::string require_string(const json& node, const std::string& path) {
  if (!node.is_string()) doc_fail(errc::syntax_error, "expected a string", path);
  return node.get<std::string>();
}

int require_int(const json& node, const std::string& path) {
  if (!node.is_number_integer()) doc_fail(errc::syntax_error, "expected an integer", path);
  return node.get<int>();
}

Rational require_rational(const json& node, const std::string& path) {
  try {
    if (node.is_string()) return rational_from_string(node.get<std::string>());
    if (node.is_number_integer()) return Rational(node.get<long long>());
  } catch (const Error& e) {
    doc_fail(errc::syntax_error, e.what(), path);
  }
  doc_fail(errc::syntax_error, "expected an exact decimal string or integer", path);
}

std::vector<std::string> require_string_array(const json& node, const std::string& path) {
  if (!node.is_array()) doc_fail(errc::syntax_error, "expected an array", path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(require_string(node[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

struct DocContext {
  int n = 0;
  int k = 0;
  std::vector<std::string> player_names;
  std::set<std::string> valid_ids;  // canonical structure ids for (n, k)
};

// Player references may be 1-based ids or declared names.
int resolve_player(const DocContext& ctx, const json& node, const std::string& path) {
  if (node.is_number_integer()) {
    const int id = node.get<int>();
    if (id < 1 || id > ctx.n) doc_fail(errc::unknown_player, "player id out of range", path);
    return id;
  }
  if (node.is_string()) {
    const std::string name = node.get<std::string>();
    for (int i = 0; i < ctx.n; ++i) {
      if (ctx.player_names[i] == name) return i + 1;
    }
    for (char c : name) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        doc_fail(errc::unknown_player, "unknown player '" + name + "'", path);
      }
    }
    const int id = std::stoi(name);
    if (id < 1 || id > ctx.n) doc_fail(errc::unknown_player, "player id out of range", path);
    return id;
  }
  doc_fail(errc::syntax_error, "expected a player id or name", path);
}

// Canonicalizes and checks the id against the game's structure set.
std::string resolve_structure_id(const DocContext& ctx, const json& node,
                                 const std::string& path) {
  const std::string raw = require_string(node, path);
  std::string canonical;
  try {
    canonical = structure_from_id(raw).id();
  } catch (const Error& e) {
    doc_fail(errc::syntax_error, e.what(), path);
  }
  if (!ctx.valid_ids.count(canonical)) {
    doc_fail(errc::unknown_structure_id,
             "structure '" + raw + "' is not valid for n=" + std::to_string(ctx.n) +
                 ", k=" + std::to_string(ctx.k),
             path);
  }
  return canonical;
}

}  // namespace

GameSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::syntax_error, e.what());
  }
  if (!doc.is_object()) fail(errc::syntax_error, "document root must be an object");

  static const std::set<std::string> known_keys = {
      "players", "max_coalition_size", "strategies", "payoffs", "mechanism", "projection"};
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys.count(key)) {
      fail(errc::syntax_error, "unknown field '" + key + "'", key);
    }
  }

  GameSpec spec;
  DocContext ctx;

  ctx.player_names = require_string_array(require_field(doc, "players", ""), "players");
  if (ctx.player_names.empty()) {
    fail(errc::syntax_error, "players list must not be empty", "players");
  }
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < ctx.player_names.size(); ++i) {
      if (ctx.player_names[i].empty() || !seen.insert(ctx.player_names[i]).second) {
        fail(errc::syntax_error, "player names must be unique and non-empty",
             "players[" + std::to_string(i) + "]");
      }
    }
  }
  ctx.n = static_cast<int>(ctx.player_names.size());
  spec.player_names = ctx.player_names;

  ctx.k = require_int(require_field(doc, "max_coalition_size", ""), "max_coalition_size");
  if (ctx.k < 1 || ctx.k > ctx.n) {
    fail(errc::invalid_bounds, "need 1 <= max_coalition_size <= number of players",
         "max_coalition_size");
  }
  spec.k_max = ctx.k;
  for (const auto& s : enumerate_structures(ctx.n, ctx.k)) ctx.valid_ids.insert(s.id());

  // strategies: array shorthand, {"shared": [...]}, or {"per_player": {...}}
  const json& strategies = require_field(doc, "strategies", "");
  if (strategies.is_array()) {
    spec.shared_labels = require_string_array(strategies, "strategies");
  } else if (strategies.is_object() && strategies.contains("shared")) {
    spec.shared_labels = require_string_array(strategies["shared"], "strategies.shared");
  } else if (strategies.is_object() && strategies.contains("per_player")) {
    const json& per_player = strategies["per_player"];
    if (!per_player.is_object()) {
      fail(errc::syntax_error, "expected an object", "strategies.per_player");
    }
    for (const auto& [player_key, table] : per_player.items()) {
      const std::string path = "strategies.per_player." + player_key;
      const int player = resolve_player(ctx, json(player_key), path);
      if (!table.is_object()) doc_fail(errc::syntax_error, "expected an object", path);
      for (const auto& [structure_key, labels] : table.items()) {
        const std::string spath = path + "." + structure_key;
        const std::string id = resolve_structure_id(ctx, json(structure_key), spath);
        spec.labels[player][id] = require_string_array(labels, spath);
      }
    }
  } else {
    fail(errc::syntax_error, "expected an array, {\"shared\": [...]}, or {\"per_player\": {...}}",
         "strategies");
  }
  if (spec.shared_labels && spec.shared_labels->empty()) {
    fail(errc::syntax_error, "label alphabet must not be empty", "strategies");
  }

  auto labels_of = [&](int player, const std::string& structure_id)
      -> const std::vector<std::string>* {
    if (spec.shared_labels) return &*spec.shared_labels;
    auto pit = spec.labels.find(player);
    if (pit == spec.labels.end()) return nullptr;
    auto sit = pit->second.find(structure_id);
    if (sit == pit->second.end()) return nullptr;
    return &sit->second;
  };
  auto check_label = [&](int player, const std::string& structure_id, const std::string& label,
                         const std::string& path) {
    const auto* labels = labels_of(player, structure_id);
    if (!labels) {
      doc_fail(errc::label_undeclared,
               "no labels declared for player " + std::to_string(player) + " on structure " +
                   structure_id,
               path);
    }
    if (std::find(labels->begin(), labels->end(), label) == labels->end()) {
      doc_fail(errc::label_undeclared, "label '" + label + "' undeclared for player " +
                                           std::to_string(player) + " on structure " +
                                           structure_id,
               path);
    }
  };

  const json& payoffs = require_field(doc, "payoffs", "");
  if (!payoffs.is_array()) fail(errc::syntax_error, "expected an array", "payoffs");
  for (std::size_t r = 0; r < payoffs.size(); ++r) {
    const std::string path = "payoffs[" + std::to_string(r) + "]";
    const json& row = payoffs[r];
    if (!row.is_object()) doc_fail(errc::syntax_error, "expected an object", path);
    GameSpec::PayoffRow out;
    out.structure_id =
        resolve_structure_id(ctx, require_field(row, "structure", path), path + ".structure");
    out.labels = require_string_array(require_field(row, "profile", path), path + ".profile");
    if (static_cast<int>(out.labels.size()) != ctx.n) {
      doc_fail(errc::payoff_row_arity_mismatch,
               "profile needs one label per player (" + std::to_string(ctx.n) + ")",
               path + ".profile");
    }
    for (int p = 1; p <= ctx.n; ++p) {
      check_label(p, out.structure_id, out.labels[p - 1],
                  path + ".profile[" + std::to_string(p - 1) + "]");
    }
    const json& values = require_field(row, "values", path);
    if (!values.is_array() || static_cast<int>(values.size()) != ctx.n) {
      doc_fail(errc::payoff_row_arity_mismatch,
               "values needs one entry per player (" + std::to_string(ctx.n) + ")",
               path + ".values");
    }
    for (std::size_t v = 0; v < values.size(); ++v) {
      out.values.push_back(
          require_rational(values[v], path + ".values[" + std::to_string(v) + "]"));
    }
    spec.payoffs.push_back(std::move(out));
  }

  if (doc.contains("mechanism")) {
    const json& mechanism = doc["mechanism"];
    if (mechanism.is_string()) {
      spec.mechanism_name = mechanism.get<std::string>();
    } else if (mechanism.is_object()) {
      spec.mechanism_name = require_string(require_field(mechanism, "name", "mechanism"),
                                           "mechanism.name");
      const json& table = require_field(mechanism, "table", "mechanism");
      if (!table.is_array()) fail(errc::syntax_error, "expected an array", "mechanism.table");
      for (std::size_t r = 0; r < table.size(); ++r) {
        const std::string path = "mechanism.table[" + std::to_string(r) + "]";
        const json& row = table[r];
        GameSpec::MechanismRow out;
        const json& choices = require_field(row, "choices", path);
        if (!choices.is_array() || static_cast<int>(choices.size()) != ctx.n) {
          doc_fail(errc::payoff_row_arity_mismatch, "choices needs one entry per player",
                   path + ".choices");
        }
        for (int p = 1; p <= ctx.n; ++p) {
          const std::string cpath = path + ".choices[" + std::to_string(p - 1) + "]";
          const json& choice = choices[p - 1];
          GameSpec::MechanismRow::ChoiceRef ref;
          ref.structure_id =
              resolve_structure_id(ctx, require_field(choice, "structure", cpath),
                                   cpath + ".structure");
          ref.label = require_string(require_field(choice, "label", cpath), cpath + ".label");
          check_label(p, ref.structure_id, ref.label, cpath + ".label");
          out.choices.push_back(std::move(ref));
        }
        out.structure_id =
            resolve_structure_id(ctx, require_field(row, "structure", path), path + ".structure");
        out.labels = require_string_array(require_field(row, "labels", path), path + ".labels");
        if (static_cast<int>(out.labels.size()) != ctx.n) {
          doc_fail(errc::payoff_row_arity_mismatch, "labels needs one entry per player",
                   path + ".labels");
        }
        for (int p = 1; p <= ctx.n; ++p) {
          check_label(p, out.structure_id, out.labels[p - 1],
                      path + ".labels[" + std::to_string(p - 1) + "]");
        }
        spec.mechanism_table.push_back(std::move(out));
      }
    } else {
      fail(errc::syntax_error, "expected a mechanism name or {name, table}", "mechanism");
    }
  }

  if (doc.contains("projection")) {
    const json& projection = doc["projection"];
    if (!projection.is_array()) fail(errc::syntax_error, "expected an array", "projection");
    for (std::size_t r = 0; r < projection.size(); ++r) {
      const std::string path = "projection[" + std::to_string(r) + "]";
      const json& row = projection[r];
      GameSpec::ProjectionRow out;
      out.player = resolve_player(ctx, require_field(row, "player", path), path + ".player");
      out.from_structure = resolve_structure_id(
          ctx, require_field(row, "from_structure", path), path + ".from_structure");
      out.label =
          require_string(require_field(row, "label", path), path + ".label");
      out.to_structure = resolve_structure_id(ctx, require_field(row, "final_structure", path),
                                              path + ".final_structure");
      out.to_label =
          require_string(require_field(row, "final_label", path), path + ".final_label");
      check_label(out.player, out.from_structure, out.label, path + ".label");
      check_label(out.player, out.to_structure, out.to_label, path + ".final_label");
      spec.projection.push_back(std::move(out));
    }
  }

  return spec;
}

GameSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::invalid_argument, "cannot open spec file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

std::string serialize_spec(const GameSpec& spec) {
  json doc;
  doc["players"] = spec.player_names;
  doc["max_coalition_size"] = spec.k_max;
  if (spec.shared_labels) {
    doc["strategies"] = json{{"shared", *spec.shared_labels}};
  } else {
    json per_player = json::object();
    for (const auto& [player, table] : spec.labels) {
      json entry = json::object();
      for (const auto& [structure_id, labels] : table) entry[structure_id] = labels;
      per_player[std::to_string(player)] = std::move(entry);
    }
    doc["strategies"] = json{{"per_player", std::move(per_player)}};
  }
  doc["payoffs"] = json::array();
  for (const auto& row : spec.payoffs) {
    json values = json::array();
    for (const auto& v : row.values) values.push_back(rational_to_string(v));
    doc["payoffs"].push_back(json{{"structure", row.structure_id},
                                  {"profile", row.labels},
                                  {"values", std::move(values)}});
  }
  if (spec.mechanism_table.empty()) {
    doc["mechanism"] = spec.mechanism_name;
  } else {
    json table = json::array();
    for (const auto& row : spec.mechanism_table) {
      json choices = json::array();
      for (const auto& ref : row.choices) {
        choices.push_back(json{{"structure", ref.structure_id}, {"label", ref.label}});
      }
      table.push_back(json{{"choices", std::move(choices)},
                           {"structure", row.structure_id},
                           {"labels", row.labels}});
    }
    doc["mechanism"] = json{{"name", spec.mechanism_name}, {"table", std::move(table)}};
  }
  if (!spec.projection.empty()) {
    json rows = json::array();
    for (const auto& row : spec.projection) {
      rows.push_back(json{{"player", row.player},
                          {"from_structure", row.from_structure},
                          {"label", row.label},
                          {"final_structure", row.to_structure},
                          {"final_label", row.to_label}});
    }
    doc["projection"] = std::move(rows);
  }
  return doc.dump(2) + "\n";
}

GameSpec generate_pd(const Rational& reward, const Rational& sucker, const Rational& temptation,
                     const Rational& punishment, int k_max) {
  if (k_max < 1 || k_max > 2) {
    fail(errc::invalid_bounds, "the generator covers two players, so k must be 1 or 2");
  }
  GameSpec spec;
  spec.player_names = {"1", "2"};
  spec.k_max = k_max;
  spec.shared_labels = std::vector<std::string>{"L", "H"};
  spec.mechanism_name = "unanimity";

  std::vector<std::string> structures = {"1|2"};
  if (k_max == 2) structures.push_back("1,2");
  for (const auto& id : structures) {
    spec.payoffs.push_back({id, {"L", "L"}, {reward, reward}});
    spec.payoffs.push_back({id, {"L", "H"}, {sucker, temptation}});
    spec.payoffs.push_back({id, {"H", "L"}, {temptation, sucker}});
    spec.payoffs.push_back({id, {"H", "H"}, {punishment, punishment}});
  }
  return spec;
}

}  // namespace csf
