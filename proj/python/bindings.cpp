#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "mtmorph/arabic.hpp"
#include "mtmorph/engine.hpp"
#include "mtmorph/grammar.hpp"
#include "mtmorph/morphotactics.hpp"
#include "mtmorph/oracle.hpp"

namespace py = pybind11;
using namespace mtmorph;

namespace {

py::dict to_dict(const FeatureStructure& fs) {
  py::dict d;
  for (const auto& [a, v] : fs) d[py::str(a)] = v.to_string();
  return d;
}

FeatureStructure from_dict(const std::map<std::string, std::string>& d) {
  FeatureStructure fs;
  for (const auto& [a, v] : d)
    fs.set(a, !v.empty() && v[0] == '$' ? Value::variable(v.substr(1)) : Value::atom(v));
  return fs;
}

py::list steps(const Partition& p) {
  py::list out;
  for (const auto& s : p.steps) {
    py::list lex;
    for (const auto& slice : s.lex) lex.append(to_text(slice));
    out.append(py::make_tuple(s.rule, lex, to_text(s.surf)));
  }
  return out;
}

TapeTuple tapes_of(const std::vector<std::string>& forms, const Grammar& g) {
  TapeTuple t;
  for (const auto& f : forms) t.push_back(f == "0" ? SegmentString{} : g.alphabet.segments(f));
  return t;
}

py::dict result_dict(const SynthesisResult& r) {
  py::dict d;
  d["surface"] = to_text(r.surface);
  d["features"] = to_dict(r.features);
  d["partition"] = steps(r.partition);
  return d;
}

py::dict analysis_dict(const Analysis& a) {
  py::dict d;
  d["stem"] = a.stem.empty() ? py::object(py::none()) : py::object(py::str(a.stem));
  d["morphemes"] = a.morphemes;
  d["gloss"] = a.gloss;
  d["features"] = to_dict(a.features);
  d["partition"] = steps(a.partition);
  return d;
}

std::vector<FeatureStructure> features_list(const std::vector<std::map<std::string, std::string>>& in) {
  std::vector<FeatureStructure> out;
  for (const auto& d : in) out.push_back(from_dict(d));
  return out;
}

}  // namespace

PYBIND11_MODULE(_mtmorph, m) {
  m.doc() = "Multi-tape two-level morphology engine";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnknownSymbolError>(m, "UnknownSymbolError", PyExc_ValueError);
  py::register_exception<oracle::LimitExceeded>(m, "LimitExceeded", PyExc_RuntimeError);

  py::class_<Grammar>(m, "Grammar")
      .def_property_readonly("ntapes", &Grammar::ntapes)
      .def_readonly("tape_names", &Grammar::tape_names)
      .def_property_readonly("rule_ids",
                             [](const Grammar& g) {
                               std::vector<std::string> ids;
                               for (const auto& r : g.rules) ids.push_back(r.id);
                               return ids;
                             })
      .def("serialize", [](const Grammar& g) { return serialize(g); });

  py::class_<Lexicon>(m, "Lexicon")
      .def_property_readonly("stem_ids",
                             [](const Lexicon& l) {
                               std::vector<std::string> ids;
                               for (const auto& s : l.stems()) ids.push_back(s.id);
                               return ids;
                             })
      .def_property_readonly("morpheme_ids", [](const Lexicon& l) {
        std::vector<std::string> ids;
        for (const auto& mo : l.morphemes()) ids.push_back(mo.id);
        return ids;
      });

  m.def("parse_grammar", [](const std::string& text) { return parse_grammar(text); }, py::arg("text"));
  m.def("parse_lexicon", [](const std::string& text, const Grammar& g) { return parse_lexicon(text, g); },
        py::arg("text"), py::arg("grammar"));

  m.def("builtin_grammar", [] { return arabic::builtin().multi_tape; });
  m.def("builtin_single_tape_grammar", [] { return arabic::builtin().single_tape; });
  m.def("builtin_lexicon", [] { return arabic::builtin().lexicon; });

  m.def("unify",
        [](const std::map<std::string, std::string>& a, const std::map<std::string, std::string>& b) -> py::object {
          auto r = unify(from_dict(a), from_dict(b));
          return r ? py::object(to_dict(*r)) : py::object(py::none());
        },
        py::arg("a"), py::arg("b"), "Unify two flat feature structures; values starting with $ are variables.");

  m.def("mode_features", [](const std::string& mode) {
    auto md = arabic::parse_mode(mode);
    if (!md) throw py::value_error("unknown mode " + mode);
    return to_dict(arabic::mode_features(*md));
  });

  m.def("synthesize",
        [](const Grammar& g, const std::vector<std::string>& tapes,
           const std::vector<std::map<std::string, std::string>>& morpheme_features,
           const std::map<std::string, std::string>& constraints) {
          auto fs = features_list(morpheme_features);
          py::list out;
          for (const auto& r : synthesize(tapes_of(tapes, g), fs, g, from_dict(constraints))) out.append(result_dict(r));
          return out;
        },
        py::arg("grammar"), py::arg("tapes"), py::arg("morpheme_features") = std::vector<std::map<std::string, std::string>>{},
        py::arg("constraints") = std::map<std::string, std::string>{});

  m.def("generate",
        [](const Grammar& g, const Lexicon& lex, const std::string& stem, const std::string& mode) {
          FeatureStructure constraints;
          if (!mode.empty()) {
            auto md = arabic::parse_mode(mode);
            if (!md) throw py::value_error("unknown mode " + mode);
            constraints = arabic::mode_features(*md);
          }
          py::list out;
          for (const auto& r : synthesize_stem(g, lex, stem, constraints)) out.append(result_dict(r));
          return out;
        },
        py::arg("grammar"), py::arg("lexicon"), py::arg("stem"), py::arg("mode") = "");

  m.def("analyze",
        [](const Grammar& g, const Lexicon& lex, const std::string& surface, bool filtered) {
          py::list out;
          if (!std::all_of(surface.begin(), surface.end(), [&](char c) { return g.alphabet.try_classify(c).has_value(); }))
            return out;
          auto raw = analyze(g.alphabet.segments(surface), g, lex);
          auto kept = filtered ? filter(raw, MorphotacticGrammar(lex)) : raw;
          for (const auto& a : kept) out.append(analysis_dict(a));
          return out;
        },
        py::arg("grammar"), py::arg("lexicon"), py::arg("surface"), py::arg("filter") = true);

  m.def("enumerate_surfaces",
        [](const Grammar& g, const std::vector<std::string>& tapes, std::size_t max_len,
           const std::vector<std::map<std::string, std::string>>& morpheme_features) {
          auto fs = features_list(morpheme_features);
          py::list out;
          for (const auto& s : oracle::enumerate_surfaces(tapes_of(tapes, g), g, max_len, fs))
            out.append(py::make_tuple(to_text(s.surface), to_dict(s.features)));
          return out;
        },
        py::arg("grammar"), py::arg("tapes"), py::arg("max_len"),
        py::arg("morpheme_features") = std::vector<std::map<std::string, std::string>>{});
}
