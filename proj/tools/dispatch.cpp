#include "dispatch.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "morphan/classifier.hpp"
#include "morphan/complexity.hpp"
#include "morphan/errors.hpp"

namespace morphan::cli {

namespace {

using nlohmann::json;

MorphicSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

std::string order_str(int order) {
  return order == kOrderInfinite ? "inf" : std::to_string(order);
}

std::string periodicity_str(Periodicity p) {
  switch (p) {
    case Periodicity::Periodic: return "periodic";
    case Periodicity::Preperiodic: return "preperiodic";
    case Periodicity::NotApplicable: return "-";
  }
  return "?";
}

std::vector<std::int64_t> parse_ns(const std::string& list) {
  std::vector<std::int64_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoll(item));
  if (out.empty()) throw CLI::ValidationError("--ns", "expected a comma-separated list");
  return out;
}

int cmd_orders(const std::string& spec, std::ostream& out) {
  MorphicSystem s = load_system(spec);
  auto profiles = letter_profiles(s);
  out << "letter  order  periodicity\n";
  for (const auto& p : profiles)
    out << std::left << std::setw(8) << s.alphabet.name_of(p.letter) << std::setw(7)
        << order_str(p.order) << periodicity_str(p.periodicity) << "\n";
  return 0;
}

int cmd_normalize(const std::string& spec, bool emit, std::ostream& out) {
  MorphicSystem s = load_system(spec);
  auto [nsys, rep] = normalize(s);
  if (emit) {
    out << emit_system(nsys);
    return 0;
  }
  auto profiles = letter_profiles(nsys);
  FinalPeriodSet fps = compute_final_periods(nsys, profiles);
  out << "power: " << rep.power << "\n";
  out << "added letters:";
  if (rep.added_letters.empty()) out << " (none)";
  for (auto [l, role] : rep.added_letters)
    out << " " << nsys.alphabet.name_of(l) << "(" << (role == AddedRole::Order1 ? "order1" : "order2")
        << ")";
  out << "\n";
  out << "weakly 1-periodic: " << (rep.flags.weakly_1_periodic ? "yes" : "no") << "\n";
  out << "strongly 1-periodic: " << (rep.flags.strongly_1_periodic ? "yes" : "no") << "\n";
  out << "long images: " << (rep.flags.long_images ? "yes" : "no") << "\n";
  out << "final periods:";
  for (const auto& w : fps.periods) out << " " << nsys.alphabet.render(w);
  out << "\nL: " << fps.L << "\n";
  return 0;
}

std::string occ_str(const Occurrence& o) {
  return "[" + std::to_string(o.start) + ".." + std::to_string(o.end) + "]";
}

int cmd_blocks(const std::string& spec, int k, std::int64_t prefix_len, bool as_json,
               std::ostream& out) {
  MorphicSystem raw = load_system(spec);
  auto [nsys, rep] = normalize(raw);
  auto profiles = letter_profiles(nsys);
  PrefixAnalyzer an(nsys, profiles, generate_prefix(nsys, prefix_len));
  const auto& items = an.decompose(k);
  auto& evos = const_cast<std::vector<EvolutionRecord>&>(an.evolutions(k));
  auto abstract = origin_closure(nsys, profiles, k);

  std::size_t letters = 0, blocks = 0, empties = 0;
  for (const auto& it : items) {
    if (!it.is_block)
      ++letters;
    else if (it.occurrence.empty())
      ++empties;
    else
      ++blocks;
  }
  std::set<OriginTuple> observed_tuples;
  for (const auto& e : evos) observed_tuples.insert(e.origin);

  json j;
  j["normalize_power"] = rep.power;
  j["prefix_len"] = prefix_len;
  j["k"] = k;
  j["items"] = {{"letters", letters}, {"blocks", blocks}, {"empty_blocks", empties}};
  j["evolutions_observed"] = evos.size();
  j["origin_tuples_observed"] = observed_tuples.size();
  j["origin_tuples_abstract"] = abstract.size();
  j["evolutions"] = json::array();
  for (auto& e : evos) {
    json je;
    je["id"] = e.id;
    je["origin_word"] = nsys.alphabet.render(e.origin.w0);
    je["left_border"] = nsys.alphabet.name_of(e.origin.lb);
    je["right_border"] = nsys.alphabet.name_of(e.origin.rb);
    je["case_left"] = e.case_left_I() ? "I" : "II";
    je["case_right"] = e.case_right_I() ? "I" : "II";
    je["members_observed"] = e.members.size();
    je["max_seq"] = e.members.empty() ? -1 : e.members.rbegin()->first;
    // Anatomy digest of the deepest observed stable member.
    for (auto it = e.members.rbegin(); it != e.members.rend(); ++it) {
      if (it->first < 3 * k) break;
      auto anat = an.anatomy_of(e, it->first);
      je["stable_member"] = it->first;
      je["left_preperiod"] = nsys.alphabet.render(an.prefix().slice(anat.left_preperiod));
      je["right_preperiod"] = nsys.alphabet.render(an.prefix().slice(anat.right_preperiod));
      json ck = json::array();
      for (const auto& c : anat.central_composite) ck.push_back(nsys.alphabet.render(an.prefix().slice(c)));
      je["composite_central_kernels"] = ck;
      break;
    }
    j["evolutions"].push_back(je);
  }

  if (as_json) {
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "normalized power: " << rep.power << ", prefix length " << prefix_len << ", level k=" << k
      << "\n";
  out << "items: " << letters << " letters, " << blocks << " blocks, " << empties
      << " empty blocks\n";
  out << "evolutions observed: " << evos.size() << " (distinct origins " << observed_tuples.size()
      << ", abstract origin closure " << abstract.size() << ")\n";
  for (const auto& je : j["evolutions"]) {
    out << "  " << je["id"].get<std::string>() << " origin '" << je["origin_word"].get<std::string>()
        << "' borders " << je["left_border"].get<std::string>() << "/"
        << je["right_border"].get<std::string>() << " case " << je["case_left"].get<std::string>()
        << "/" << je["case_right"].get<std::string>() << " members "
        << je["members_observed"].get<int>() << " max seq " << je["max_seq"].get<int>() << "\n";
    if (je.contains("stable_member")) {
      out << "    stable member " << je["stable_member"].get<int>() << ": LpreP '"
          << je["left_preperiod"].get<std::string>() << "' RpreP '"
          << je["right_preperiod"].get<std::string>() << "' central kernels";
      for (const auto& c : je["composite_central_kernels"]) out << " '" << c.get<std::string>() << "'";
      out << "\n";
    }
  }
  return 0;
}

json verdict_json(const MorphicSystem& nsys_like, const ComplexityVerdict& v) {
  json j;
  j["class"] = v.class_string();
  j["exponent"] = v.cls == ComplexityVerdict::Class::PolyExponent ? json(v.exponent_string()) : json();
  j["fired_rule"] = to_string(v.fired_rule);
  j["k_star"] = v.k_star ? json(*v.k_star) : json();
  j["normalize_power"] = v.normalize_power;
  j["horizons"] = {{"window", v.horizons.window},
                   {"horizon", v.horizons.horizon},
                   {"prefix_len", v.horizons.prefix_len}};
  j["counterexample"] =
      v.counterexample ? json({{"evolution", v.counterexample->first}, {"k", v.counterexample->second}})
                       : json();
  j["axiom_order_finite"] = v.axiom_order_finite;
  if (v.infinite_axiom_no_finite_letters) j["boundary_case"] = "infinite axiom, no finite-order letters";
  json evs = json::array();
  for (const auto& e : v.evolutions) {
    json je;
    je["id"] = e.id;
    je["k"] = e.k;
    je["origin_word"] = nsys_like.alphabet.render(e.origin.w0);
    je["case_left"] = e.case_left_I ? "I" : "II";
    je["case_right"] = e.case_right_I ? "I" : "II";
    je["ncker"] = e.ncker;
    je["continuously_periodic"] = e.continuously_periodic;
    if (e.witness) {
      je["witness_m"] = e.witness->index_m;
      je["left_period"] = nsys_like.alphabet.render(e.witness->left_period);
      je["right_period"] = nsys_like.alphabet.render(e.witness->right_period);
    }
    evs.push_back(je);
  }
  j["evolutions"] = evs;
  return j;
}

int cmd_classify(const std::string& spec, const ClassifyParams& params, bool as_json,
                 std::ostream& out) {
  MorphicSystem s = load_system(spec);
  ComplexityVerdict v = classify(s, params);
  auto [nsys, rep] = normalize(s);  // for rendering letters in summaries
  if (as_json) {
    out << verdict_json(nsys, v).dump(2) << "\n";
    return 0;
  }
  out << "class: " << v.class_string();
  if (v.cls == ComplexityVerdict::Class::PolyExponent) out << " n^(" << v.exponent_string() << ")";
  out << "\nfired rule: " << to_string(v.fired_rule) << "\n";
  if (v.k_star) out << "k*: " << *v.k_star << "\n";
  out << "normalized power: " << v.normalize_power << "\n";
  if (v.counterexample)
    out << "counterexample: " << v.counterexample->first << " (k=" << v.counterexample->second
        << ")\n";
  out << "horizons: window " << v.horizons.window << ", bounding-sequence " << v.horizons.horizon
      << ", prefix " << v.horizons.prefix_len << "\n";
  for (const auto& e : v.evolutions) {
    out << "  " << e.id << " origin '" << nsys.alphabet.render(e.origin.w0) << "' case "
        << (e.case_left_I ? "I" : "II") << "/" << (e.case_right_I ? "I" : "II") << " ncker "
        << e.ncker << " " << (e.continuously_periodic ? "continuously periodic" : "NOT periodic");
    if (e.witness) out << " (m=" << e.witness->index_m << ")";
    out << "\n";
  }
  return 0;
}

ComplexityTable measure_table(const MorphicSystem& s, std::int64_t prefix_len,
                              const std::vector<std::int64_t>& ns, bool override_guard) {
  ProvenancePrefix pre = generate_prefix(s, prefix_len);
  Word beta = apply_coding(s, pre.text());
  beta.resize(static_cast<std::size_t>(prefix_len));
  FactorCountOptions opts;
  opts.override_guard = override_guard;
  return factor_counts(beta, ns, opts);
}

int cmd_measure(const std::string& spec, std::int64_t prefix_len, const std::string& ns_list,
                const std::string& out_path, const std::string& format, bool override_guard,
                std::ostream& out, std::ostream& err) {
  MorphicSystem s = load_system(spec);
  auto ns = parse_ns(ns_list);
  ComplexityTable table = measure_table(s, prefix_len, ns, override_guard);

  std::ostringstream data;
  if (format == "csv") {
    data << "n,p_n\n";
    for (auto [n, p] : table.entries) data << n << "," << p << "\n";
  } else if (format == "json") {
    json j;
    j["prefix_len"] = table.prefix_len;
    j["entries"] = json::array();
    for (auto [n, p] : table.entries) j["entries"].push_back({{"n", n}, {"p_n", p}});
    data << j.dump(2) << "\n";
  } else {
    throw CLI::ValidationError("--format", "must be csv or json");
  }
  if (out_path.empty() || out_path == "-") {
    out << data.str();
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "cannot write " << out_path << "\n";
      return 1;
    }
    f << data.str();
  }
  return 0;
}

int cmd_verify(const std::string& spec, const ClassifyParams& params, const std::string& ns_list,
               std::ostream& out) {
  MorphicSystem s = load_system(spec);
  ComplexityVerdict v = classify(s, params);
  out << "verdict: " << v.class_string();
  if (v.cls == ComplexityVerdict::Class::PolyExponent) out << " n^(" << v.exponent_string() << ")";
  out << " via " << to_string(v.fired_rule) << "\n";

  std::vector<std::int64_t> ns = parse_ns(ns_list);
  ComplexityTable table = measure_table(s, params.prefix_len, ns, false);
  for (auto [n, p] : table.entries) out << "  p(" << n << ") = " << p << "\n";
  CrossCheckReport rep = cross_check(v, table);
  if (rep.fitted_points > 0)
    out << "fitted slope: " << rep.slope << " over " << rep.fitted_points << " points ("
        << rep.dropped_saturated << " saturated entries dropped)\n";
  for (const auto& item : rep.items)
    out << (item.pass ? "PASS " : "FAIL ") << item.name << ": " << item.detail << "\n";
  out << (rep.pass ? "consistency: PASS\n" : "consistency: FAIL\n");
  return rep.pass ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"morphan: structure and subword-complexity analysis of morphic sequences"};
  app.require_subcommand(1);

  std::string spec, ns_list = "128,256,512,1024,2048", out_path, format = "csv";
  int k = 1;
  bool emit = false, as_json = false, override_guard = false;
  ClassifyParams params;

  auto* orders_cmd = app.add_subcommand("orders", "letter orders and periodicity");
  orders_cmd->add_option("spec", spec, "system spec file")->required();

  auto* norm_cmd = app.add_subcommand("normalize", "normalization report");
  norm_cmd->add_option("spec", spec)->required();
  norm_cmd->add_flag("--emit", emit, "print the normalized system in spec format");

  auto* blocks_cmd = app.add_subcommand("blocks", "k-block decomposition and evolutions");
  blocks_cmd->add_option("spec", spec)->required();
  blocks_cmd->add_option("-k", k, "block level")->required();
  blocks_cmd->add_option("--prefix-len", params.prefix_len, "prefix length");
  blocks_cmd->add_flag("--json", as_json);

  auto* classify_cmd = app.add_subcommand("classify", "complexity class prediction");
  classify_cmd->add_option("spec", spec)->required();
  classify_cmd->add_option("--horizon", params.horizon, "bounding-sequence horizon");
  classify_cmd->add_option("--window", params.window, "stable-member window");
  classify_cmd->add_option("--prefix-len", params.prefix_len, "prefix length");
  classify_cmd->add_flag("--json", as_json);

  auto* measure_cmd = app.add_subcommand("measure", "exact factor counts on a prefix");
  measure_cmd->add_option("spec", spec)->required();
  measure_cmd->add_option("--prefix-len", params.prefix_len, "prefix length");
  measure_cmd->add_option("--ns", ns_list, "comma-separated factor lengths");
  measure_cmd->add_option("--out", out_path, "output path (default stdout)");
  measure_cmd->add_option("--format", format, "csv or json");
  measure_cmd->add_flag("--force", override_guard, "override the truncation guard");

  auto* verify_cmd = app.add_subcommand("verify", "classify + measure + cross-check");
  verify_cmd->add_option("spec", spec)->required();
  verify_cmd->add_option("--prefix-len", params.prefix_len);
  verify_cmd->add_option("--ns", ns_list);
  verify_cmd->add_option("--horizon", params.horizon);
  verify_cmd->add_option("--window", params.window);

  std::vector<std::string> args = argv;
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (orders_cmd->parsed()) return cmd_orders(spec, out);
    if (norm_cmd->parsed()) return cmd_normalize(spec, emit, out);
    if (blocks_cmd->parsed()) return cmd_blocks(spec, k, params.prefix_len, as_json, out);
    if (classify_cmd->parsed()) return cmd_classify(spec, params, as_json, out);
    if (measure_cmd->parsed())
      return cmd_measure(spec, params.prefix_len, ns_list, out_path, format, override_guard, out, err);
    if (verify_cmd->parsed()) return cmd_verify(spec, params, ns_list, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return (e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Validation) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace morphan::cli
