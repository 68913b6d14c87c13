#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stallings/stallings.hpp"

namespace fg {
namespace {

using nlohmann::json;
using namespace stallings;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What a verb produced: the machine form, the human form and, for
// predicates, the yes/no answer that --strict turns into an exit code.
struct Reply {
  json data = json::object();
  std::string text;
  std::optional<bool> answer;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_words(const std::vector<Word>& words, const Alphabet& alphabet) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ",";
    out += format_word(words[i], alphabet);
  }
  return out;
}

json words_json(const std::vector<Word>& words, const Alphabet& alphabet) {
  json out = json::array();
  for (const auto& w : words) out.push_back(format_word(w, alphabet));
  return out;
}

struct Session {
  std::string alphabet_text = "ab";
  bool json_mode = false;
  bool strict = false;

  Alphabet alphabet() const { return Alphabet::from_letters(alphabet_text); }

  Word word(const std::string& text) const { return parse_word(text, alphabet()); }

  std::vector<Word> words(const std::string& text) const { return parse_word_list(text, alphabet()); }

  // Inline JSON when the argument starts with '{', a graph file when the
  // path exists, otherwise a comma-separated generator list.
  SubgroupGraph subgroup(const std::string& arg) const {
    auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') return subgroup_from_json_text(arg);
    std::error_code ec;
    if (!arg.empty() && std::filesystem::is_regular_file(arg, ec)) {
      std::ifstream in(arg);
      std::stringstream buffer;
      buffer << in.rdbuf();
      return subgroup_from_json_text(buffer.str());
    }
    return stallings_graph(alphabet(), words(arg));
  }
};

// Subgroup arguments of one verb: --sub values first, then positionals.
struct SubgroupArgs {
  std::vector<std::string> subs;
  std::vector<std::string> positional;

  std::vector<std::string> all() const {
    auto out = subs;
    out.insert(out.end(), positional.begin(), positional.end());
    return out;
  }

  std::vector<std::string> exactly(std::size_t n, const std::string& verb) const {
    auto out = all();
    if (out.size() != n) {
      throw UsageError(verb + " expects " + std::to_string(n) + " subgroup argument" + (n == 1 ? "" : "s") +
                       ", got " + std::to_string(out.size()));
    }
    return out;
  }
};

void add_subgroup_args(CLI::App* cmd, SubgroupArgs& args, const std::string& what) {
  cmd->add_option("--sub", args.subs, what + " (word list, inline JSON or graph file)");
  cmd->add_option("subgroups", args.positional, what);
}

json graph_reply(const SubgroupGraph& g) { return to_json(g); }

void write_dot(const std::string& path, const SubgroupGraph& g) {
  if (path.empty()) return;
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write DOT file '" + path + "'");
  file << to_dot(g);
}

Reply graph_only(const SubgroupGraph& g) {
  Reply r;
  r.data = {{"graph", graph_reply(g)}, {"rank", rank(g)}};
  r.text = graph_reply(g).dump();
  return r;
}

json component_json(const ComponentReport& c, const Alphabet& alphabet) {
  json pairs = json::array();
  for (const auto& p : c.pairs) pairs.push_back({p.first, p.second});
  json edges = json::array();
  for (const auto& e : c.component.edges()) edges.push_back({e.from, alphabet.symbol(e.label), e.to});
  return {{"vertices", pairs},
          {"edges", edges},
          {"contains_base_pair", c.contains_base_pair},
          {"representative", {c.representative.first, c.representative.second}},
          {"rank", c.rank},
          {"witness", c.witness ? json(format_word(*c.witness, alphabet)) : json(nullptr)}};
}

json graph_list(const std::vector<SubgroupGraph>& list) {
  json out = json::array();
  for (const auto& g : list) out.push_back(to_json(g));
  return out;
}

int run_parsed(CLI::App& app, Session& session, const std::map<std::string, std::function<Reply()>>& verbs,
               std::ostream& out) {
  for (const auto* sub : app.get_subcommands()) {
    auto it = verbs.find(sub->get_name());
    if (it == verbs.end()) continue;
    Reply r = it->second();
    if (session.json_mode) {
      json data = r.data;
      if (r.answer) data["answer"] = *r.answer;
      out << data.dump() << "\n";
    } else {
      out << r.text;
      if (!r.text.empty() && r.text.back() != '\n') out << "\n";
    }
    return (session.strict && r.answer && !*r.answer) ? kAnswerNo : kComputed;
  }
  throw UsageError("no verb given");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session;
  CLI::App app{"Subgroups of free groups via Stallings graphs", "fg"};
  app.require_subcommand(1);
  app.add_option("--alphabet", session.alphabet_text, "generator letters, e.g. ab")->capture_default_str();
  app.add_flag("--json", session.json_mode, "machine-readable JSON output");
  app.add_flag("--strict", session.strict, "exit 1 when a predicate answers no");

  std::map<std::string, std::function<Reply()>> verbs;
  SubgroupArgs sa;
  std::string word_arg;
  std::string dot_path;
  std::vector<std::string> word_list;
  bool geodesic = false;
  bool ambient = false;
  std::string inside;
  std::size_t plateau_budget = kDefaultPlateauBudget;
  std::size_t vertex_bound = ExtensionOptions{}.vertex_bound;
  std::optional<std::uint64_t> depth;
  std::uint64_t word_budget = IsolationOptions{}.word_budget;
  bool want_algebraic = false, want_malnormal = false, want_isolated = false;

  auto ext_options = [&] {
    ExtensionOptions opt;
    opt.vertex_bound = vertex_bound;
    opt.plateau_budget = plateau_budget;
    return opt;
  };
  auto iso_options = [&] {
    IsolationOptions opt;
    opt.depth_override = depth;
    opt.word_budget = word_budget;
    return opt;
  };

  // reduce
  {
    auto* cmd = app.add_subcommand("reduce", "freely reduce words");
    cmd->add_option("words", word_list, "words to reduce")->required();
    verbs["reduce"] = [&] {
      Reply r;
      json list = json::array();
      for (const auto& w : word_list) {
        auto s = format_word(session.word(w), session.alphabet());
        list.push_back(s);
        r.text += s + "\n";
      }
      r.data = {{"words", list}};
      return r;
    };
  }
  // graph
  {
    auto* cmd = app.add_subcommand("graph", "build the subgroup graph");
    add_subgroup_args(cmd, sa, "subgroup");
    cmd->add_option("--dot", dot_path, "also write DOT to this file");
    verbs["graph"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "graph")[0]);
      write_dot(dot_path, h);
      return graph_only(h);
    };
  }
  // member
  {
    auto* cmd = app.add_subcommand("member", "is a word in the subgroup");
    add_subgroup_args(cmd, sa, "subgroup");
    cmd->add_option("--word", word_arg, "word to test")->required();
    verbs["member"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "member")[0]);
      Reply r;
      r.answer = contains(h, session.word(word_arg));
      r.text = yes_no(*r.answer);
      return r;
    };
  }
  // basis
  {
    auto* cmd = app.add_subcommand("basis", "free basis from a spanning tree");
    add_subgroup_args(cmd, sa, "subgroup");
    cmd->add_flag("--geodesic", geodesic, "use a breadth-first (geodesic) tree; the basis is Nielsen reduced");
    verbs["basis"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "basis")[0]);
      auto b = basis(h, spanning_tree(h, geodesic));
      Reply r;
      r.data = {{"basis", words_json(b.elements, h.alphabet())}, {"edges", b.edges}, {"geodesic", geodesic}};
      r.text = join_words(b.elements, h.alphabet());
      return r;
    };
  }
  // rank
  {
    auto* cmd = app.add_subcommand("rank", "rank of the subgroup");
    add_subgroup_args(cmd, sa, "subgroup");
    verbs["rank"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "rank")[0]);
      Reply r;
      r.data = {{"rank", rank(h)}};
      r.text = std::to_string(rank(h));
      return r;
    };
  }
  // index
  {
    auto* cmd = app.add_subcommand("index", "index in F(X) with coset representatives");
    add_subgroup_args(cmd, sa, "subgroup");
    verbs["index"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "index")[0]);
      auto i = index(h);
      Reply r;
      if (i.index) {
        r.data = {{"index", *i.index}, {"coset_representatives", words_json(i.coset_representatives, h.alphabet())}};
        r.text = std::to_string(*i.index);
      } else {
        r.data = {{"index", "infinite"}};
        r.text = "infinite";
      }
      return r;
    };
  }
  // normal
  {
    auto* cmd = app.add_subcommand("normal", "is the subgroup normal");
    add_subgroup_args(cmd, sa, "subgroup");
    verbs["normal"] = [&] {
      auto n = is_normal(session.subgroup(sa.exactly(1, "normal")[0]));
      Reply r;
      r.answer = n.normal;
      r.data = {{"trivial", n.trivial}};
      r.text = yes_no(n.normal) + (n.trivial ? " (trivial subgroup)" : "");
      return r;
    };
  }
  // conjugate
  {
    auto* cmd = app.add_subcommand("conjugate", "graph of gHg^-1");
    add_subgroup_args(cmd, sa, "subgroup");
    cmd->add_option("--word", word_arg, "conjugator g")->required();
    cmd->add_option("--dot", dot_path, "also write DOT to this file");
    verbs["conjugate"] = [&] {
      auto c = conjugate(session.subgroup(sa.exactly(1, "conjugate")[0]), session.word(word_arg));
      write_dot(dot_path, c);
      return graph_only(c);
    };
  }
  // conj-equiv
  {
    auto* cmd = app.add_subcommand("conj-equiv", "find g with gHg^-1 = K");
    add_subgroup_args(cmd, sa, "H then K");
    verbs["conj-equiv"] = [&] {
      auto s = sa.exactly(2, "conj-equiv");
      auto h = session.subgroup(s[0]);
      auto g = conjugacy_equivalent(h, session.subgroup(s[1]));
      Reply r;
      r.answer = g.has_value();
      r.data = {{"conjugator", g ? json(format_word(*g, h.alphabet())) : json(nullptr)}};
      r.text = yes_no(*r.answer) + (g ? "\nconjugator: " + format_word(*g, h.alphabet()) : "");
      return r;
    };
  }
  // conj-into
  {
    auto* cmd = app.add_subcommand("conj-into", "find g with gKg^-1 <= H");
    add_subgroup_args(cmd, sa, "K then H");
    verbs["conj-into"] = [&] {
      auto s = sa.exactly(2, "conj-into");
      auto k = session.subgroup(s[0]);
      auto g = conjugate_into(k, session.subgroup(s[1]));
      Reply r;
      r.answer = g.has_value();
      r.data = {{"conjugator", g ? json(format_word(*g, k.alphabet())) : json(nullptr)}};
      r.text = yes_no(*r.answer) + (g ? "\nconjugator: " + format_word(*g, k.alphabet()) : "");
      return r;
    };
  }
  // power
  {
    auto* cmd = app.add_subcommand("power", "least m >= 1 with g^m in H");
    add_subgroup_args(cmd, sa, "subgroup");
    cmd->add_option("--word", word_arg, "element g")->required();
    verbs["power"] = [&] {
      auto m = power_in(session.subgroup(sa.exactly(1, "power")[0]), session.word(word_arg));
      Reply r;
      r.answer = m.has_value();
      r.data = {{"power", m ? json(*m) : json(nullptr)}};
      r.text = m ? std::to_string(*m) : "none";
      return r;
    };
  }
  // hall
  {
    auto* cmd = app.add_subcommand("hall", "finite-index L with H a free factor and g not in L");
    add_subgroup_args(cmd, sa, "subgroup");
    cmd->add_option("--word", word_arg, "element g outside H")->required();
    cmd->add_option("--dot", dot_path, "also write DOT to this file");
    verbs["hall"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "hall")[0]);
      auto c = hall_completion(h, session.word(word_arg));
      write_dot(dot_path, c.completion);
      Reply r;
      r.data = {{"graph", to_json(c.completion)},
                {"index", c.completion.vertex_count()},
                {"y_h", words_json(c.y_h, h.alphabet())},
                {"y_c", words_json(c.y_c, h.alphabet())}};
      r.text = to_json(c.completion).dump() + "\nindex: " + std::to_string(c.completion.vertex_count()) +
               "\nY_H: " + join_words(c.y_h, h.alphabet()) + "\nY_C: " + join_words(c.y_c, h.alphabet());
      return r;
    };
  }
  // join
  {
    auto* cmd = app.add_subcommand("join", "graph of the subgroup generated by H and K");
    add_subgroup_args(cmd, sa, "H then K");
    cmd->add_option("--dot", dot_path, "also write DOT to this file");
    verbs["join"] = [&] {
      auto s = sa.exactly(2, "join");
      auto j = join(session.subgroup(s[0]), session.subgroup(s[1]));
      write_dot(dot_path, j);
      return graph_only(j);
    };
  }
  // intersect
  {
    auto* cmd = app.add_subcommand("intersect", "graph of H ∩ K");
    add_subgroup_args(cmd, sa, "H then K");
    cmd->add_option("--dot", dot_path, "also write DOT to this file");
    verbs["intersect"] = [&] {
      auto s = sa.exactly(2, "intersect");
      auto i = intersection(session.subgroup(s[0]), session.subgroup(s[1]));
      write_dot(dot_path, i);
      auto r = graph_only(i);
      r.text += "\nrank: " + std::to_string(rank(i));
      return r;
    };
  }
  // components
  {
    auto* cmd = app.add_subcommand("components", "components of the product graph");
    add_subgroup_args(cmd, sa, "H then K");
    verbs["components"] = [&] {
      auto s = sa.exactly(2, "components");
      auto h = session.subgroup(s[0]);
      auto reports = component_analysis(h, session.subgroup(s[1]));
      Reply r;
      json list = json::array();
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& c = reports[i];
        list.push_back(component_json(c, h.alphabet()));
        r.text += "component " + std::to_string(i) + ": " + std::to_string(c.component.vertex_count()) +
                  " vertices, " + std::to_string(c.component.edge_count()) + " edges, rank " +
                  std::to_string(c.rank);
        if (c.contains_base_pair) r.text += ", base pair";
        if (c.witness) r.text += ", witness " + format_word(*c.witness, h.alphabet());
        r.text += "\n";
      }
      r.data = {{"components", list}};
      return r;
    };
  }
  // malnormal
  {
    auto* cmd = app.add_subcommand("malnormal", "is the subgroup malnormal");
    add_subgroup_args(cmd, sa, "subgroup");
    verbs["malnormal"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "malnormal")[0]);
      auto m = is_malnormal(h);
      Reply r;
      r.answer = m.malnormal;
      r.data = {{"witness", m.witness ? json(format_word(*m.witness, h.alphabet())) : json(nullptr)}};
      r.text = yes_no(m.malnormal) + (m.witness ? "\nwitness: " + format_word(*m.witness, h.alphabet()) : "");
      return r;
    };
  }
  // cyclonormal
  {
    auto* cmd = app.add_subcommand("cyclonormal", "is every gHg^-1 ∩ H (g not in H) cyclic");
    add_subgroup_args(cmd, sa, "subgroup");
    verbs["cyclonormal"] = [&] {
      Reply r;
      r.answer = is_cyclonormal(session.subgroup(sa.exactly(1, "cyclonormal")[0]));
      r.text = yes_no(*r.answer);
      return r;
    };
  }
  // immersed
  {
    auto* cmd = app.add_subcommand("immersed", "is the generating set immersed");
    add_subgroup_args(cmd, sa, "generator list");
    verbs["immersed"] = [&] {
      Reply r;
      r.answer = is_immersed(session.words(sa.exactly(1, "immersed")[0]));
      r.text = yes_no(*r.answer);
      return r;
    };
  }
  // hn-check
  {
    auto* cmd = app.add_subcommand("hn-check", "Hanna Neumann inequality for H and K");
    add_subgroup_args(cmd, sa, "H then K");
    verbs["hn-check"] = [&] {
      auto s = sa.exactly(2, "hn-check");
      auto h = session.subgroup(s[0]);
      auto k = session.subgroup(s[1]);
      auto c = intersection(h, k);
      Reply r;
      r.answer = hanna_neumann_check(h, k);
      r.data = {{"rank_h", rank(h)}, {"rank_k", rank(k)}, {"rank_intersection", rank(c)}};
      r.text = yes_no(*r.answer) + "\nranks: " + std::to_string(rank(h)) + " " + std::to_string(rank(k)) +
               " intersection " + std::to_string(rank(c));
      return r;
    };
  }
  // free-factor
  {
    auto* cmd = app.add_subcommand("free-factor", "is K a free factor of F(X) or of H");
    add_subgroup_args(cmd, sa, "K");
    auto* amb = cmd->add_flag("--ambient", ambient, "test against F(X)");
    cmd->add_option("--in", inside, "test against this subgroup H")->excludes(amb);
    cmd->add_option("--plateau-budget", plateau_budget, "state budget of the plateau search")->capture_default_str();
    verbs["free-factor"] = [&] {
      auto k = session.subgroup(sa.exactly(1, "free-factor")[0]);
      if (!ambient && inside.empty()) throw UsageError("free-factor needs --ambient or --in H");
      Reply r;
      r.answer = inside.empty() ? is_free_factor_of_ambient(k, plateau_budget)
                                : is_free_factor(k, session.subgroup(inside), plateau_budget);
      r.text = yes_no(*r.answer);
      return r;
    };
  }
  // quotients
  {
    auto* cmd = app.add_subcommand("quotients", "principal quotients of the subgroup graph");
    add_subgroup_args(cmd, sa, "K");
    cmd->add_option("--vertex-bound", vertex_bound, "refuse larger graphs")->capture_default_str();
    verbs["quotients"] = [&] {
      std::vector<SubgroupGraph> list;
      for (auto& q : principal_quotients(session.subgroup(sa.exactly(1, "quotients")[0]), ext_options())) {
        list.push_back(std::move(q.graph));
      }
      Reply r;
      r.data = {{"quotients", graph_list(list)}};
      r.text = graph_list(list).dump();
      return r;
    };
  }
  // ext-type
  {
    auto* cmd = app.add_subcommand("ext-type", "is K <= H algebraic or free");
    add_subgroup_args(cmd, sa, "K then H");
    cmd->add_option("--vertex-bound", vertex_bound, "refuse larger graphs")->capture_default_str();
    cmd->add_option("--plateau-budget", plateau_budget, "state budget of the plateau search")->capture_default_str();
    verbs["ext-type"] = [&] {
      auto s = sa.exactly(2, "ext-type");
      auto v = is_algebraic_extension(session.subgroup(s[0]), session.subgroup(s[1]), ext_options());
      Reply r;
      std::string kind = v.is_algebraic() ? "algebraic" : "free";
      r.data = {{"kind", kind}, {"factor", v.factor ? to_json(*v.factor) : json(nullptr)}};
      r.text = kind + (v.factor ? "\nfactor: " + to_json(*v.factor).dump() : "");
      return r;
    };
  }
  // extensions
  {
    auto* cmd = app.add_subcommand("extensions", "all algebraic extensions of K");
    add_subgroup_args(cmd, sa, "K");
    cmd->add_option("--vertex-bound", vertex_bound, "refuse larger graphs")->capture_default_str();
    cmd->add_option("--plateau-budget", plateau_budget, "state budget of the plateau search")->capture_default_str();
    verbs["extensions"] = [&] {
      auto list = algebraic_extensions(session.subgroup(sa.exactly(1, "extensions")[0]), ext_options());
      Reply r;
      r.data = {{"extensions", graph_list(list)}};
      r.text = graph_list(list).dump();
      return r;
    };
  }
  // closure
  {
    auto* cmd = app.add_subcommand("closure", "algebraic closure, malnormal closure or isolator");
    add_subgroup_args(cmd, sa, "K");
    auto* a = cmd->add_flag("--algebraic", want_algebraic, "largest algebraic extension");
    auto* m = cmd->add_flag("--malnormal", want_malnormal, "least malnormal subgroup containing K");
    auto* i = cmd->add_flag("--isolated", want_isolated, "least isolated subgroup containing K");
    a->excludes(m)->excludes(i);
    m->excludes(i);
    cmd->add_option("--dot", dot_path, "also write DOT to this file");
    cmd->add_option("--vertex-bound", vertex_bound, "refuse larger graphs")->capture_default_str();
    cmd->add_option("--plateau-budget", plateau_budget, "state budget of the plateau search")->capture_default_str();
    cmd->add_option("--depth", depth, "isolation search depth instead of the full bound");
    verbs["closure"] = [&] {
      auto k = session.subgroup(sa.exactly(1, "closure")[0]);
      if (!want_algebraic && !want_malnormal && !want_isolated) {
        throw UsageError("closure needs one of --algebraic, --malnormal, --isolated");
      }
      auto c = want_algebraic   ? algebraic_closure(k, ext_options())
               : want_malnormal ? malnormal_closure(k, ext_options())
                                : isolator(k, ext_options(), iso_options());
      write_dot(dot_path, c);
      return graph_only(c);
    };
  }
  // isolated
  {
    auto* cmd = app.add_subcommand("isolated", "is the subgroup closed under roots");
    add_subgroup_args(cmd, sa, "subgroup");
    cmd->add_option("--depth", depth, "search words up to this length instead of the full bound");
    cmd->add_option("--budget", word_budget, "candidate words examined before giving up")->capture_default_str();
    verbs["isolated"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "isolated")[0]);
      auto res = is_isolated(h, iso_options());
      Reply r;
      r.answer = res.isolated;
      r.data = {{"full_bound", res.full_bound},
                {"searched_length", res.searched_length},
                {"bounded", res.bounded},
                {"words_examined", res.words_examined},
                {"witness", res.witness ? json{{"word", format_word(res.witness->first, h.alphabet())},
                                               {"power", res.witness->second}}
                                        : json(nullptr)}};
      r.text = yes_no(res.isolated);
      if (res.witness) {
        r.text += "\nwitness: " + format_word(res.witness->first, h.alphabet()) + "^" +
                  std::to_string(res.witness->second);
      }
      r.text += "\nbound: " + std::to_string(res.full_bound);
      if (res.bounded) r.text += "\nbounded search up to length " + std::to_string(res.searched_length);
      return r;
    };
  }
  // dot
  {
    auto* cmd = app.add_subcommand("dot", "DOT rendering of the subgroup graph");
    add_subgroup_args(cmd, sa, "subgroup");
    cmd->add_option("--dot", dot_path, "write to this file instead of standard output");
    verbs["dot"] = [&] {
      auto h = session.subgroup(sa.exactly(1, "dot")[0]);
      Reply r;
      if (dot_path.empty()) {
        r.text = to_dot(h);
      } else {
        write_dot(dot_path, h);
      }
      r.data = {{"dot", to_dot(h)}};
      return r;
    };
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kComputed : kUsage;
  }
  try {
    return run_parsed(app, session, verbs, out);
  } catch (const resource_limit& e) {
    err << "fg: resource limit: " << e.what() << " (bound " << e.bound() << ")\n";
    return kResourceLimit;
  } catch (const stallings::error& e) {
    err << "fg: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "fg: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "fg: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace fg
