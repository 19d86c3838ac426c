#pragma once

// Command dispatch for the spanforge tool. Exit codes: 0 pass, 1 property
// failure, 2 input error.

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spanforge/fib.hpp"
#include "spanforge/spec_file.hpp"

namespace spanforge::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_input_error = 2;

namespace detail {

inline std::vector<std::size_t> parse_csv(const std::string& s) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(ErrorKind::ParseError, "not a comma-separated list of naturals: \"" + s + "\"");
    }
    out.push_back(std::stoull(item));
  }
  return out;
}

inline std::size_t parse_hex(std::string s) {
  if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
  if (s.empty() || s.size() > 15 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isxdigit(c); })) {
    throw Error(ErrorKind::ParseError, "not a hex value: \"" + s + "\"");
  }
  return std::stoull(s, nullptr, 16);
}

inline std::string bits(std::size_t value, std::size_t width) {
  std::string out(width, '0');
  for (std::size_t i = 0; i < width; ++i) out[width - 1 - i] = ((value >> i) & 1U) ? '1' : '0';
  return out;
}

inline int print_report(std::ostream& out, const Report& r, const std::string& prefix = "") {
  for (const auto& c : r.checks) {
    out << (c.passed ? "pass " : "FAIL ") << prefix << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  return r.passed() ? exit_pass : exit_failure;
}

inline int summary(std::ostream& out, const Report& r) {
  if (r.passed()) {
    out << "result: pass\n";
    return exit_pass;
  }
  out << "result: FAIL (" << r.first_failure()->name << ")\n";
  return exit_failure;
}

}  // namespace detail

inline int cmd_check(const std::string& path, std::string kind, std::ostream& out) {
  const auto j = spec::load(path);
  if (kind.empty()) kind = spec::kind_of(j);
  Report r;
  if (kind == "internal-category") {
    const auto ic = spec::internal_category_from_json(j);
    out << "internal category " << ic.name << ": |O| = " << ic.o.size() << ", |M| = " << ic.m.size() << '\n';
    r = check_internal_category(ic);
  } else if (kind == "internal-groupoid") {
    const auto g = spec::internal_groupoid_from_json(j);
    out << "internal groupoid " << g.cat.name << ": |O| = " << g.cat.o.size() << ", |M| = " << g.cat.m.size() << '\n';
    const auto base = check_internal_category(g.cat);
    if (!base.passed()) {
      detail::print_report(out, base);
      out << "underlying internal category is invalid\n";
      return detail::summary(out, base);
    }
    r.append(base);
    r.append(check_internal_groupoid(g));
  } else if (kind == "monoid" || kind == "group") {
    const auto m = spec::monoid_from_json(j);
    out << kind << ' ' << m.name << ": order " << m.order << '\n';
    r = kind == "group" ? check_group(m) : check_monoid(m);
  } else if (kind == "fibration") {
    r = check_discrete_fibration(spec::fibration_from_json(j));
  } else {
    throw Error(ErrorKind::InvalidArgument, "check does not handle kind \"" + kind + "\"");
  }
  detail::print_report(out, r);
  return detail::summary(out, r);
}

inline int cmd_conv_table(const std::string& path, const std::vector<std::string>& slice, std::ostream& out) {
  const auto ic = share(spec::internal_category_from_json(spec::load(path)));
  const auto laws = check_internal_category(*ic);
  if (!laws.passed()) {
    detail::print_report(out, laws);
    return detail::summary(out, laws);
  }
  if (slice.empty() || slice.size() > 2) throw Error(ErrorKind::InvalidArgument, "--slice takes a size and a table");
  const FinSet a(std::stoull(slice[0]));
  const FinMap f(a, ic->o, detail::parse_csv(slice.size() > 1 ? slice[1] : ""));
  const SliceObject fa(f);

  const auto elems = conv_elements(fa, ic);
  require_within_cap(static_cast<std::uint64_t>(elems.size()) * elems.size(), "convolution table");
  const auto unit = conv_unit(fa, ic);
  out << "convolution monoid over f = " << f.to_string() << ": " << elems.size() << " elements\n";
  std::size_t unit_index = npos;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out << "  " << i << ": " << elems[i].map().to_string() << '\n';
    if (elems[i] == unit) unit_index = i;
  }
  out << "unit: " << unit_index << '\n';

  auto index_of = [&elems](const ConvElement& x) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (elems[i] == x) return i;
    }
    return npos;
  };
  std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
  const auto width = std::to_string(elems.empty() ? 0 : elems.size() - 1).size();
  out << "table (row * column):\n";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    out << ' ';
    for (std::size_t k = 0; k < elems.size(); ++k) {
      table[i][k] = index_of(conv_mult(elems[i], elems[k]));
      out << ' ' << std::setw(static_cast<int>(width)) << table[i][k];
    }
    out << '\n';
  }
  bool group = true;
  for (std::size_t i = 0; i < elems.size() && group; ++i) {
    bool found = false;
    for (std::size_t k = 0; k < elems.size() && !found; ++k) found = table[i][k] == unit_index && table[k][i] == unit_index;
    group = found;
  }
  out << "group: " << (group ? "yes" : "no") << '\n';
  return exit_pass;
}

inline int cmd_toffoli(std::size_t m, std::size_t n, const std::string& f_csv, std::ostream& out) {
  const auto f = detail::parse_csv(f_csv);
  const auto perm = toffoli_extend(m, n, f);
  const FinSet states(perm.size());
  if (!FinMap(states, states, perm).is_bijective()) {
    out << "FAIL extension is not a bijection\n";
    return exit_failure;
  }
  for (std::size_t s = 0; s < perm.size(); ++s) {
    out << detail::bits(s, m + n) << " -> " << detail::bits(perm[s], m + n) << '\n';
  }
  return exit_pass;
}

inline int cmd_feistel(const std::string& mode, const std::string& group_path, std::size_t rounds,
                       const std::string& keys_path, const std::string& input, std::ostream& out) {
  auto group = spec::group_from_json(spec::load(group_path));
  auto keys = rounds == 0 && keys_path.empty() ? std::vector<std::vector<std::size_t>>{}
                                               : spec::rounds_from_json(spec::load(keys_path));
  if (keys.size() < rounds) {
    throw Error(ErrorKind::KeyScheduleMismatch, "key file has " + std::to_string(keys.size()) + " round functions, " +
                                                    std::to_string(rounds) + " requested");
  }
  keys.resize(rounds);
  const FeistelNetwork net(std::move(group), std::move(keys));
  const auto state = detail::parse_hex(input);
  if (state >= net.state_count()) {
    throw Error(ErrorKind::InvalidArgument, "input " + input + " is outside a state space of size " +
                                                std::to_string(net.state_count()));
  }
  const auto result = mode == "encrypt" ? net.encrypt(state) : net.decrypt(state);
  std::size_t digits = 1;
  for (auto top = net.state_count() - 1; top >= 16; top /= 16) ++digits;
  std::ostringstream hex;
  hex << std::hex << std::setw(static_cast<int>(digits)) << std::setfill('0') << result;
  out << hex.str() << '\n';
  return exit_pass;
}

inline int cmd_fib_check(const std::string& internal_path, const std::string& subslice_path,
                         const std::string& fibration_path, std::ostream& out) {
  if (!fibration_path.empty()) {
    const auto r = check_discrete_fibration(spec::fibration_from_json(spec::load(fibration_path)));
    detail::print_report(out, r);
    return detail::summary(out, r);
  }
  if (internal_path.empty() || subslice_path.empty()) {
    throw Error(ErrorKind::InvalidArgument, "fib-check needs --internal and --subslice, or --fibration");
  }
  const auto j = spec::load(internal_path);
  std::optional<FinMap> iota;
  InternalCategory ic;
  if (spec::kind_of(j) == "internal-groupoid") {
    auto g = spec::internal_groupoid_from_json(j);
    ic = g.cat;
    iota = g.iota;
  } else {
    ic = spec::internal_category_from_json(j);
  }
  Report all;
  const auto laws = check_internal_category(ic);
  if (!laws.passed()) {
    detail::print_report(out, laws);
    return detail::summary(out, laws);
  }
  const auto ref = share(std::move(ic));
  const auto ss = spec::subslice_from_json(spec::load(subslice_path), ref);
  out << "sub-slice: " << ss.objects.size() << " objects, " << ss.arrows.size() << " arrows\n";

  const auto conv = build_conv_fibration(ss);
  const auto endo = build_endo_fibration(ss);
  out << "conv fibration: " << conv.instance.total.object_count() << " objects, " << conv.instance.total.arrow_count()
      << " arrows\n";
  out << "endo fibration: " << endo.instance.total.object_count() << " objects, " << endo.instance.total.arrow_count()
      << " arrows\n";
  all.append(check_discrete_fibration(conv.instance), "conv-");
  all.append(check_discrete_fibration(endo.instance), "endo-");
  all.append(cartesian_iso(ss, conv, endo).report, "iso-");
  if (iota) all.append(check_fibre_groups(conv));
  detail::print_report(out, all);
  return detail::summary(out, all);
}

/// Runs the tool on argv-style arguments (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spans, internal categories, convolution monoids and Feistel-Toffoli extensions"};
  app.name("spanforge");
  app.require_subcommand(1);

  std::string check_path, check_kind;
  auto* check = app.add_subcommand("check", "Check the axioms of a spec file");
  check->add_option("path", check_path, "spec file")->required();
  check->add_option("--kind", check_kind, "override the kind tag")
      ->check(CLI::IsMember({"internal-category", "internal-groupoid", "monoid", "group", "fibration"}));

  std::string conv_path;
  std::vector<std::string> slice;
  auto* conv = app.add_subcommand("conv-table", "Print the convolution monoid of a slice object");
  conv->add_option("path", conv_path, "internal-category file")->required();
  conv->add_option("--slice", slice, "size of A and the table of f: A -> O as csv")->expected(1, 2)->required();

  std::size_t tm = 0, tn = 0;
  std::string tf;
  auto* toffoli = app.add_subcommand("toffoli", "Print the reversible extension (x, y) -> (x, f(x) + y)");
  toffoli->add_option("--m", tm, "input bits")->required();
  toffoli->add_option("--n", tn, "output bits")->required();
  toffoli->add_option("--f", tf, "truth table of f as csv, row x holds f(x)")->required();

  std::string mode, group_path, keys_path, input;
  std::size_t rounds = 0;
  auto* feistel = app.add_subcommand("feistel", "Run a Feistel network over a finite group");
  feistel->add_option("mode", mode, "encrypt or decrypt")->required()->check(CLI::IsMember({"encrypt", "decrypt"}));
  feistel->add_option("--group", group_path, "group file")->required();
  feistel->add_option("--rounds", rounds, "number of rounds")->required();
  feistel->add_option("--keys", keys_path, "round-config file");
  feistel->add_option("--input", input, "state as hex, x * |G| + y")->required();

  std::string internal_path, subslice_path, fibration_path;
  auto* fib = app.add_subcommand("fib-check", "Verify the convolution and endomorphism fibrations");
  fib->add_option("--internal", internal_path, "internal-category or internal-groupoid file");
  fib->add_option("--subslice", subslice_path, "sub-slice file");
  fib->add_option("--fibration", fibration_path, "hand-built fibration file, checked for unique lifts");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }

  try {
    if (*check) return cmd_check(check_path, check_kind, out);
    if (*conv) return cmd_conv_table(conv_path, slice, out);
    if (*toffoli) return cmd_toffoli(tm, tn, tf, out);
    if (*feistel) return cmd_feistel(mode, group_path, rounds, keys_path, input, out);
    if (*fib) return cmd_fib_check(internal_path, subslice_path, fibration_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::NotAGroup ? exit_failure : exit_input_error;
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::logic_error& e) {
    err << "error: InvalidArgument: " << e.what() << '\n';
    return exit_input_error;
  }
  return exit_input_error;
}

}  // namespace spanforge::cli
