#include "mtmorph/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtmorph/arabic.hpp"
#include "mtmorph/engine.hpp"
#include "mtmorph/grammar.hpp"
#include "mtmorph/morphotactics.hpp"

namespace mtmorph::cli {

namespace {

using nlohmann::json;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Options {
  std::string grammar_path;
  std::string lexicon_path;
  bool json = false;
  bool trace = false;
  bool no_filter = false;
};

class Session {
 public:
  explicit Session(const Options& opts) : opts_(opts) {
    if (opts.grammar_path.empty()) {
      grammar_ = arabic::builtin().multi_tape;
    } else {
      try {
        grammar_ = parse_grammar(read_file(opts.grammar_path));
      } catch (const ParseError& e) {
        throw Failure(opts.grammar_path + ": " + e.what());
      }
    }
  }

  const Grammar& grammar() const { return grammar_; }

  const Lexicon& lexicon() {
    if (lexicon_) return *lexicon_;
    if (opts_.lexicon_path.empty() && opts_.grammar_path.empty()) {
      lexicon_ = arabic::builtin().lexicon;
      return *lexicon_;
    }
    std::string name = opts_.lexicon_path.empty() ? "builtin lexicon" : opts_.lexicon_path;
    try {
      lexicon_ = parse_lexicon(opts_.lexicon_path.empty() ? std::string(arabic::lexicon_text())
                                                          : read_file(opts_.lexicon_path),
                               grammar_);
    } catch (const ParseError& e) {
      throw Failure(name + ": " + e.what());
    }
    return *lexicon_;
  }

 private:
  const Options& opts_;
  Grammar grammar_;
  std::optional<Lexicon> lexicon_;
};

std::string slice_text(const SegmentString& s) { return s.empty() ? "0" : to_text(s); }

json features_json(const FeatureStructure& fs) {
  json out = json::object();
  for (const auto& [a, v] : fs) out[a] = v.to_string();
  return out;
}

json partition_json(const Partition& p, const Grammar& g) {
  json steps = json::array();
  for (const auto& step : p.steps) {
    json lex = json::object();
    for (std::size_t t = 0; t < step.lex.size() && t < g.ntapes(); ++t) lex[g.tape_names[t]] = to_text(step.lex[t]);
    steps.push_back({{"rule", step.rule}, {"lex", lex}, {"surface", to_text(step.surf)}});
  }
  return steps;
}

/// One column per step; tapes listed top-down from the last, then the
/// rule row and the surface row.
void print_trace(std::ostream& out, const Partition& p, const Grammar& g) {
  for (std::size_t t = g.ntapes(); t-- > 0;) {
    out << "  " << g.tape_names[t];
    for (const auto& step : p.steps) out << '\t' << slice_text(step.lex[t]);
    out << '\n';
  }
  out << "  rule";
  for (const auto& step : p.steps) out << '\t' << step.rule;
  out << "\n  surface";
  for (const auto& step : p.steps) out << '\t' << slice_text(step.surf);
  out << '\n';
}

FeatureStructure mode_constraints(const std::string& mode) {
  if (mode.empty()) return {};
  auto m = arabic::parse_mode(mode);
  if (!m) throw Failure("unknown mode '" + mode + "' (expected sing, pl or dim)");
  return arabic::mode_features(*m);
}

TapeTuple parse_form(const std::string& form, const Grammar& g) {
  TapeTuple tapes;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = form.find(',', start);
    std::string part = form.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    part.erase(std::remove_if(part.begin(), part.end(), [](unsigned char c) { return std::isspace(c); }), part.end());
    try {
      tapes.push_back(part == "0" ? SegmentString{} : g.alphabet.segments(part));
    } catch (const UnknownSymbolError& e) {
      throw Failure(std::string("--form: ") + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (tapes.size() != g.ntapes())
    throw Failure("--form has " + std::to_string(tapes.size()) + " tapes, grammar has " + std::to_string(g.ntapes()));
  return tapes;
}

int cmd_generate(Session& session, const Options& opts, const std::string& stem, const std::string& form,
                 const std::string& mode, std::ostream& out) {
  const Grammar& g = session.grammar();
  FeatureStructure constraints = mode_constraints(mode);
  SynthesisOptions so{opts.trace};
  std::vector<SynthesisResult> results;
  if (!form.empty()) {
    results = synthesize(parse_form(form, g), {}, g, constraints, so);
  } else {
    const Lexicon& lex = session.lexicon();
    if (!lex.find_stem(stem)) throw Failure("unknown stem '" + stem + "'");
    results = synthesize_stem(g, lex, stem, constraints, so);
  }

  if (opts.json) {
    json arr = json::array();
    for (const auto& r : results) {
      json partitions = json::array({partition_json(r.partition, g)});
      for (const auto& alt : r.alternatives) partitions.push_back(partition_json(alt, g));
      arr.push_back({{"surface", to_text(r.surface)}, {"features", features_json(r.features)},
                     {"partition", partition_json(r.partition, g)}, {"partitions", partitions}});
    }
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      out << to_text(r.surface) << '\t' << r.features.to_string() << '\n';
      if (opts.trace) {
        print_trace(out, r.partition, g);
        for (const auto& alt : r.alternatives) print_trace(out, alt, g);
      }
    }
  }
  return results.empty() ? kNoResult : kSuccess;
}

std::vector<Analysis> run_analysis(const Grammar& g, const Lexicon& lex, const SegmentString& surface, bool raw) {
  auto analyses = analyze(surface, g, lex);
  if (raw) {
    for (auto& a : analyses)
      if (const Stem* s = lex.find_stem_by_morphemes(a.morphemes)) a.stem = s->id;
    return analyses;
  }
  return filter(analyses, MorphotacticGrammar(lex));
}

int cmd_analyze(Session& session, const Options& opts, const std::string& text, std::ostream& out) {
  const Grammar& g = session.grammar();
  const Lexicon& lex = session.lexicon();
  // A form outside the alphabet has no analysis.
  if (std::any_of(text.begin(), text.end(), [&](char c) { return !g.alphabet.try_classify(c); })) {
    if (opts.json) out << "[]\n";
    return kNoResult;
  }
  SegmentString surface = g.alphabet.segments(text);
  auto analyses = run_analysis(g, lex, surface, opts.no_filter);

  if (opts.json) {
    json arr = json::array();
    for (const auto& a : analyses) {
      json morphemes = json::object();
      for (std::size_t t = 0; t < a.morphemes.size(); ++t) morphemes[g.tape_names[t]] = a.morphemes[t];
      json rec = {{"stem", a.stem.empty() ? json(nullptr) : json(a.stem)},
                  {"morphemes", morphemes},
                  {"features", features_json(a.features)},
                  {"partition", partition_json(a.partition, g)}};
      if (!a.gloss.empty()) rec["gloss"] = a.gloss;
      arr.push_back(std::move(rec));
    }
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& a : analyses) {
      out << (a.stem.empty() ? "-" : a.stem) << '\t' << lex.format_morphemes(a.morphemes) << '\t'
          << a.features.to_string();
      if (!a.gloss.empty()) out << (a.features.empty() ? "" : " ") << "gloss=" << a.gloss;
      out << '\n';
      if (opts.trace) print_trace(out, a.partition, g);
    }
  }
  return analyses.empty() ? kNoResult : kSuccess;
}

struct CorpusLine {
  std::size_t line;
  std::string stem;
  arabic::Mode mode;
  std::string expected;
};

struct CheckOutcome {
  bool pass = false;
  std::vector<std::string> generated;
  bool recovered = false;
  std::string reason;
};

CheckOutcome check_line(const Grammar& g, const Lexicon& lex, const CorpusLine& c) {
  CheckOutcome o;
  if (!lex.find_stem(c.stem)) {
    o.reason = "unknown stem";
    return o;
  }
  FeatureStructure mode = arabic::mode_features(c.mode);
  for (const auto& r : synthesize_stem(g, lex, c.stem, mode)) o.generated.push_back(to_text(r.surface));
  bool generated_ok = o.generated.size() == 1 && o.generated.front() == c.expected;

  auto spellable = std::all_of(c.expected.begin(), c.expected.end(),
                               [&](char ch) { return g.alphabet.try_classify(ch).has_value(); });
  if (spellable) {
    for (const auto& a : run_analysis(g, lex, g.alphabet.segments(c.expected), false))
      if (a.stem == c.stem && mode.subsumes(a.features)) o.recovered = true;
  }
  o.pass = generated_ok && o.recovered;
  if (!generated_ok) {
    std::string got;
    for (const auto& s : o.generated) got += (got.empty() ? "" : ",") + s;
    o.reason = "generated " + (got.empty() ? std::string("nothing") : got);
  } else if (!o.recovered) {
    o.reason = "analysis does not recover " + c.stem;
  }
  return o;
}

int cmd_check(Session& session, const Options& opts, const std::string& path, std::ostream& out) {
  std::string text = read_file(path);
  std::vector<CorpusLine> lines;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> f;
    for (std::string s; fields >> s;) f.push_back(s);
    if (f.empty()) continue;
    if (f.size() != 3) throw Failure(path + ": line " + std::to_string(n) + ": expected <stem> <mode> <surface>");
    auto mode = arabic::parse_mode(f[1]);
    if (!mode) throw Failure(path + ": line " + std::to_string(n) + ": unknown mode '" + f[1] + "'");
    lines.push_back({n, f[0], *mode, f[2]});
  }

  const Grammar& g = session.grammar();
  const Lexicon& lex = lines.empty() ? Lexicon() : session.lexicon();
  std::vector<CheckOutcome> outcomes(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < lines.size();) outcomes[i] = check_line(g, lex, lines[i]);
  };
  std::size_t nthreads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), lines.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t passed = 0;
  for (const auto& o : outcomes) passed += o.pass ? 1 : 0;
  if (opts.json) {
    json arr = json::array();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto& c = lines[i];
      const auto& o = outcomes[i];
      arr.push_back({{"line", c.line}, {"stem", c.stem}, {"mode", arabic::to_string(c.mode)},
                     {"expected", c.expected}, {"pass", o.pass}, {"generated", o.generated},
                     {"recovered", o.recovered}});
    }
    out << json{{"results", arr}, {"checked", lines.size()}, {"passed", passed},
                {"failed", lines.size() - passed}}.dump(2)
        << '\n';
  } else {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto& c = lines[i];
      const auto& o = outcomes[i];
      out << (o.pass ? "PASS" : "FAIL") << '\t' << c.stem << '\t' << arabic::to_string(c.mode) << '\t'
          << c.expected;
      if (!o.pass) out << '\t' << o.reason;
      out << '\n';
    }
    out << lines.size() << " checked, " << passed << " passed, " << lines.size() - passed << " failed\n";
  }
  return passed == lines.size() ? kSuccess : kNoResult;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-tape two-level morphology: generation, analysis and corpus checks", "mtmorph"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--grammar", opts.grammar_path, "Grammar file (.mtg); defaults to the built-in Arabic grammar");
  app.add_option("--lexicon", opts.lexicon_path, "Lexicon file (.mtl); defaults to the built-in Arabic lexicon");
  app.add_flag("--json", opts.json, "Emit JSON records");
  app.add_flag("--trace", opts.trace, "Print the partition of each result");
  app.add_flag("--no-filter", opts.no_filter, "analyze: skip the morphotactic filter");

  std::string stem, mode, form, surface, corpus;
  auto* generate = app.add_subcommand("generate", "Synthesize the surface forms of a stem");
  generate->add_option("stem", stem, "Stem id (or the mode, when --form is given)");
  generate->add_option("mode", mode, "sing, pl or dim")->check(CLI::IsMember({"sing", "pl", "dim"}));
  generate->add_option("--form", form, "Raw lexical tapes, comma separated (e.g. cvccvc,jndb,uu)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Analyse a surface form");
  analyze_cmd->add_option("surface", surface, "Transliterated surface form")->required();

  auto* check = app.add_subcommand("check", "Check a corpus of <stem> <mode> <surface> lines");
  check->add_option("corpus", corpus, "Corpus file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "mtmorph: " << e.what() << '\n' << app.help();
    return kError;
  }

  try {
    if (generate->parsed()) {
      if (!form.empty()) {
        if (!mode.empty()) throw Failure("with --form, give at most one positional argument (the mode)");
        mode = stem;
        stem.clear();
      } else if (stem.empty()) {
        throw Failure("generate: give a stem id or --form");
      }
      if (!mode.empty() && !arabic::parse_mode(mode)) {
        err << "mtmorph: unknown mode '" << mode << "' (expected sing, pl or dim)\n" << generate->help();
        return kError;
      }
      Session session(opts);
      return cmd_generate(session, opts, stem, form, mode, out);
    }
    Session session(opts);
    if (analyze_cmd->parsed()) return cmd_analyze(session, opts, surface, out);
    return cmd_check(session, opts, corpus, out);
  } catch (const Failure& e) {
    err << "mtmorph: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "mtmorph: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "mtmorph: " << e.what() << '\n';
  }
  return kError;
}

}  // namespace mtmorph::cli
