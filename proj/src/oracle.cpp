#include "discrex/oracle.hpp"

#include <functional>
#include <sstream>

namespace discrex::oracle {

namespace {

// Mixed-radix world space over a list of variables, with the models of Δ.
struct Space {
  const VariableTable& table;
  std::vector<VarId> vars;
  std::vector<std::size_t> stride;
  std::size_t size = 1;
  std::vector<char> model;

  Space(const Circuit& c, NodeId root, std::vector<VarId> vs, const Limits& limits)
      : table(c.table()), vars(std::move(vs)) {
    require_world_budget(table.world_count(vars), limits, "oracle enumeration");
    for (VarId v : vars) {
      stride.push_back(size);
      size *= table.arity(v);
    }
    model.assign(size, 0);
    const Evaluator eval(c, root);
    std::size_t i = 0;
    // for_each_assignment runs the first variable fastest, matching `stride`.
    for_each_assignment(table, vars, World(std::vector<StateId>(table.size(), 0)),
                        [&](const World& w) { model[i++] = eval(w) ? 1 : 0; });
  }

  // Every world of the box (one state mask per variable) has model == want.
  bool box_all(const std::vector<StateMask>& masks, char want) const {
    std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t k, std::size_t at) {
      if (k == vars.size()) return model[at] == want;
      for (std::size_t s = 0; s < table.arity(vars[k]); ++s)
        if ((masks[k] & state_bit(s)) && !go(k + 1, at + s * stride[k])) return false;
      return true;
    };
    return go(0, 0);
  }

  StateMask full(std::size_t k) const { return table.full_mask(vars[k]); }
};

// Odometer over per-variable mask choices; `choices[k]` lists the masks.
template <class Fn>
void for_each_choice(const std::vector<std::vector<StateMask>>& choices, Fn&& fn) {
  std::vector<std::size_t> pos(choices.size(), 0);
  std::vector<StateMask> masks(choices.size());
  for (std::size_t k = 0; k < choices.size(); ++k) masks[k] = choices[k][0];
  while (true) {
    fn(static_cast<const std::vector<StateMask>&>(masks));
    std::size_t k = 0;
    for (; k < choices.size(); ++k) {
      if (++pos[k] < choices[k].size()) {
        masks[k] = choices[k][pos[k]];
        break;
      }
      pos[k] = 0;
      masks[k] = choices[k][0];
    }
    if (k == choices.size()) return;
  }
}

double candidate_count(const std::vector<std::vector<StateMask>>& choices) {
  double n = 1;
  for (const auto& c : choices) n *= static_cast<double>(c.size());
  return n;
}

// Index of a mask tuple inside the odometer, for flag lookups.
struct Codebook {
  std::vector<std::unordered_map<StateMask, std::size_t>> code;
  std::vector<std::size_t> stride;
  std::size_t size = 1;

  explicit Codebook(const std::vector<std::vector<StateMask>>& choices) {
    for (const auto& c : choices) {
      std::unordered_map<StateMask, std::size_t> m;
      for (std::size_t i = 0; i < c.size(); ++i) m.emplace(c[i], i);
      code.push_back(std::move(m));
      stride.push_back(size);
      size *= c.size();
    }
  }
  std::size_t index(const std::vector<StateMask>& masks) const {
    std::size_t i = 0;
    for (std::size_t k = 0; k < masks.size(); ++k) i += code[k].at(masks[k]) * stride[k];
    return i;
  }
};

// Term masks use the full mask for "variable absent"; clause masks use 0.
Term term_of(const Space& sp, const std::vector<StateMask>& masks) {
  std::vector<Literal> lits;
  for (std::size_t k = 0; k < masks.size(); ++k)
    if (masks[k] != sp.full(k)) lits.emplace_back(sp.table, sp.vars[k], masks[k]);
  return Term(std::move(lits));
}

Clause clause_of(const Space& sp, const std::vector<StateMask>& masks) {
  std::vector<Literal> lits;
  for (std::size_t k = 0; k < masks.size(); ++k)
    if (masks[k] != 0) lits.emplace_back(sp.table, sp.vars[k], masks[k]);
  return Clause(std::move(lits));
}

std::vector<StateMask> complement_box(const Space& sp, const std::vector<StateMask>& clause) {
  std::vector<StateMask> box(clause.size());
  for (std::size_t k = 0; k < clause.size(); ++k)
    box[k] = clause[k] == 0 ? sp.full(k) : sp.full(k) & ~clause[k];
  return box;
}

void check_candidates(double n, const Limits& limits, const char* what) {
  if (n > limits.max_worlds) {
    std::ostringstream os;
    os << what << ": " << n << " candidates exceed the enumeration limit of "
       << limits.max_worlds;
    throw CapacityError(os.str());
  }
}

} // namespace

std::vector<World> enumerate_models(const Circuit& c, NodeId root, const Limits& limits) {
  const auto vars = all_vars(c.table());
  require_world_budget(c.table().world_count(), limits, "model enumeration");
  const Evaluator eval(c, root);
  std::vector<World> out;
  for_each_assignment(c.table(), vars, World(std::vector<StateId>(vars.size(), 0)),
                      [&](const World& w) {
                        if (eval(w)) out.push_back(w);
                      });
  return out;
}

std::vector<World> select_semantics(const Circuit& c, NodeId root, const Term& simple_term,
                                    Mode mode, const Limits& limits) {
  if (!simple_term.is_simple()) throw PreconditionError("selection semantics needs a simple term");
  const VariableTable& table = c.table();
  const auto vars = all_vars(table);
  require_world_budget(table.world_count(), limits, "selection semantics");
  const Evaluator eval(c, root);
  std::vector<World> out;
  for_each_assignment(table, vars, World(std::vector<StateId>(vars.size(), 0)),
                      [&](const World& w) {
    if (!eval(w)) return;
    bool ok = true;
    if (mode == Mode::select) {
      // Setting any subset of τ's variables to τ's states.
      std::vector<VarId> tv = simple_term.vars();
      for (std::size_t subset = 1; ok && subset < (std::size_t{1} << tv.size()); ++subset) {
        World w2 = w;
        for (std::size_t k = 0; k < tv.size(); ++k)
          if (subset & (std::size_t{1} << k))
            w2.set(tv[k], static_cast<StateId>(std::countr_zero(simple_term.find(tv[k])->states())));
        ok = eval(w2);
      }
    } else {
      // Changing the variables set differently in τ to arbitrary states.
      std::vector<VarId> diff;
      for (const auto& l : simple_term)
        if (!l.contains(w[l.var()])) diff.push_back(l.var());
      for_each_assignment(table, diff, w, [&](const World& w2) { ok = ok && eval(w2); });
    }
    if (ok) out.push_back(w);
  });
  return out;
}

TermSet brute_prime_implicants(const Circuit& c, NodeId root, const Limits& limits) {
  const Space sp(c, root, variables(c, root), limits);
  std::vector<std::vector<StateMask>> choices;
  for (std::size_t k = 0; k < sp.vars.size(); ++k) {
    std::vector<StateMask> ms;
    for (StateMask m = 1; m <= sp.full(k); ++m) ms.push_back(m);
    choices.push_back(std::move(ms));
  }
  check_candidates(candidate_count(choices), limits, "prime implicant search");
  const Codebook book(choices);
  std::vector<char> implicant(book.size, 0);
  for_each_choice(choices, [&](const std::vector<StateMask>& m) {
    implicant[book.index(m)] = sp.box_all(m, 1);
  });
  TermSet out;
  for_each_choice(choices, [&](const std::vector<StateMask>& m) {
    if (!implicant[book.index(m)]) return;
    auto weaker = m;
    for (std::size_t k = 0; k < m.size(); ++k)
      for (std::size_t s = 0; s < sp.table.arity(sp.vars[k]); ++s) {
        if (m[k] & state_bit(s)) continue;
        weaker[k] = m[k] | state_bit(s);
        const bool hit = implicant[book.index(weaker)];
        weaker[k] = m[k];
        if (hit) return;
      }
    out.push_back(term_of(sp, m));
  });
  canonicalize(out);
  return out;
}

ClauseSet brute_prime_implicates(const Circuit& c, NodeId root, const Limits& limits) {
  const Space sp(c, root, variables(c, root), limits);
  std::vector<std::vector<StateMask>> choices;
  for (std::size_t k = 0; k < sp.vars.size(); ++k) {
    std::vector<StateMask> ms;
    for (StateMask m = 0; m < sp.full(k); ++m) ms.push_back(m);
    choices.push_back(std::move(ms));
  }
  check_candidates(candidate_count(choices), limits, "prime implicate search");
  const Codebook book(choices);
  std::vector<char> implicate(book.size, 0);
  for_each_choice(choices, [&](const std::vector<StateMask>& m) {
    implicate[book.index(m)] = sp.box_all(complement_box(sp, m), 0);
  });
  ClauseSet out;
  for_each_choice(choices, [&](const std::vector<StateMask>& m) {
    if (!implicate[book.index(m)]) return;
    auto stronger = m;
    for (std::size_t k = 0; k < m.size(); ++k)
      for (std::size_t s = 0; s < sp.table.arity(sp.vars[k]); ++s) {
        if (!(m[k] & state_bit(s))) continue;
        stronger[k] = m[k] & ~state_bit(s);
        const bool hit = implicate[book.index(stronger)];
        stronger[k] = m[k];
        if (hit) return;
      }
    out.push_back(clause_of(sp, m));
  });
  canonicalize(out);
  return out;
}

std::optional<Term> consensus(const VariableTable& table, const Term& a, const Term& b,
                              VarId var) {
  const Literal* la = a.find(var);
  const Literal* lb = b.find(var);
  if (la == nullptr || lb == nullptr || la->entails(*lb) || lb->entails(*la)) return std::nullopt;
  std::vector<Literal> ga, gb;
  for (const auto& l : a)
    if (l.var() != var) ga.push_back(l);
  for (const auto& l : b)
    if (l.var() != var) gb.push_back(l);
  auto rest = conjoin(table, Term(std::move(ga)), Term(std::move(gb)));
  if (!rest) return std::nullopt;
  const StateMask u = la->states() | lb->states();
  if (u == table.full_mask(var)) return rest;
  std::vector<Literal> lits(rest->begin(), rest->end());
  lits.emplace_back(table, var, u);
  return Term(std::move(lits));
}

TermSet consensus_closure(const VariableTable& table, TermSet dnf, const Limits& limits) {
  TermSet terms = remove_subsumed(std::move(dnf));
  bool changed = true;
  while (changed) {
    changed = false;
    TermSet fresh;
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = i + 1; j < terms.size(); ++j)
        for (const auto& l : terms[i]) {
          auto t = consensus(table, terms[i], terms[j], l.var());
          if (!t) continue;
          const bool known = std::any_of(terms.begin(), terms.end(),
                                         [&](const Term& u) { return subsumes(u, *t); });
          if (!known) fresh.push_back(std::move(*t));
        }
    if (!fresh.empty()) {
      changed = true;
      terms.insert(terms.end(), fresh.begin(), fresh.end());
      terms = remove_subsumed(std::move(terms));
      if (terms.size() > limits.max_clauses)
        throw CapacityError("consensus closure exceeded the term budget");
    }
  }
  return terms;
}

namespace {

// Var-subset bitmask of a mask tuple: bit k set when variable k is mentioned.
std::size_t mentioned(const std::vector<StateMask>& masks, StateMask absent_full,
                      const Space& sp) {
  std::size_t bits = 0;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const bool absent = absent_full ? masks[k] == sp.full(k) : masks[k] == 0;
    if (!absent) bits |= std::size_t{1} << k;
  }
  return bits;
}

// True when some strict subset of `bits` is flagged in `has`.
bool strict_subset_flagged(std::size_t bits, const std::vector<char>& has) {
  for (std::size_t sub = bits; sub != 0;) {
    sub = (sub - 1) & bits;
    if (has[sub]) return true;
    if (sub == 0) break;
  }
  return false;
}

} // namespace

Explanations brute_explanations(const Circuit& c, NodeId root, const Instance& inst,
                                const Limits& limits) {
  const VariableTable& table = c.table();
  check_world(table, inst);
  const Space sp(c, root, all_vars(table), limits);
  const std::size_t n = sp.vars.size();
  if (n > 20) throw CapacityError("brute-force explanations support at most 20 variables");
  Explanations out;
  const auto bit = [&](std::size_t k) { return state_bit(inst[sp.vars[k]]); };

  // Simple reasons: subsets of the instance's literals.
  std::vector<char> sr_ok(std::size_t{1} << n, 0), nr_ok(std::size_t{1} << n, 0);
  for (std::size_t a = 0; a < sr_ok.size(); ++a) {
    std::vector<StateMask> term_box(n), flip_box(n);
    for (std::size_t k = 0; k < n; ++k) {
      const bool in = a & (std::size_t{1} << k);
      term_box[k] = in ? bit(k) : sp.full(k);
      flip_box[k] = in ? sp.full(k) & ~bit(k) : bit(k);
    }
    sr_ok[a] = sp.box_all(term_box, 1);
    nr_ok[a] = !sp.box_all(flip_box, 1);
  }
  for (std::size_t a = 0; a < sr_ok.size(); ++a) {
    std::vector<Literal> lits;
    for (std::size_t k = 0; k < n; ++k)
      if (a & (std::size_t{1} << k)) lits.push_back(Literal::simple(table, sp.vars[k], inst[sp.vars[k]]));
    // A subset of literals is a weaker term and a stronger clause.
    if (sr_ok[a] && !strict_subset_flagged(a, sr_ok)) out.srs.emplace_back(lits);
    if (nr_ok[a] && !strict_subset_flagged(a, nr_ok)) out.nrs.emplace_back(lits);
  }

  // General reasons: literals that contain the instance's state.
  std::vector<std::vector<StateMask>> term_choices, clause_choices;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<StateMask> t, cl{0};
    for (StateMask m = 1; m <= sp.full(k); ++m) {
      if (!(m & bit(k))) continue;
      t.push_back(m);
      if (m != sp.full(k)) cl.push_back(m);
    }
    term_choices.push_back(std::move(t));
    clause_choices.push_back(std::move(cl));
  }
  check_candidates(candidate_count(term_choices), limits, "general reason search");

  const Codebook tbook(term_choices);
  std::vector<char> t_ok(tbook.size, 0), t_vars(std::size_t{1} << n, 0);
  for_each_choice(term_choices, [&](const std::vector<StateMask>& m) {
    if (sp.box_all(m, 1)) {
      t_ok[tbook.index(m)] = 1;
      t_vars[mentioned(m, 1, sp)] = 1;
    }
  });
  for_each_choice(term_choices, [&](const std::vector<StateMask>& m) {
    if (!t_ok[tbook.index(m)] || strict_subset_flagged(mentioned(m, 1, sp), t_vars)) return;
    // Weakest: no qualifying term one state weaker (qualifying terms between
    // two qualifying terms also qualify, so one step suffices).
    auto w = m;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t s = 0; s < table.arity(sp.vars[k]); ++s) {
        if (m[k] & state_bit(s)) continue;
        w[k] = m[k] | state_bit(s);
        const bool hit = t_ok[tbook.index(w)];
        w[k] = m[k];
        if (hit) return;
      }
    out.gsrs.push_back(term_of(sp, m));
  });

  std::vector<std::vector<StateMask>> qualifying;
  std::vector<char> c_vars(std::size_t{1} << n, 0);
  for_each_choice(clause_choices, [&](const std::vector<StateMask>& m) {
    std::vector<StateMask> box(n);
    for (std::size_t k = 0; k < n; ++k) box[k] = m[k] == 0 ? bit(k) : sp.full(k) & ~m[k];
    if (sp.box_all(box, 0)) {
      qualifying.push_back(m);
      c_vars[mentioned(m, 0, sp)] = 1;
    }
  });
  for (const auto& m : qualifying) {
    if (strict_subset_flagged(mentioned(m, 0, sp), c_vars)) continue;
    // Strongest: no other qualifying clause entails this one.
    const bool beaten = std::any_of(qualifying.begin(), qualifying.end(), [&](const auto& o) {
      if (o == m) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (o[k] & ~m[k]) return false;
      return true;
    });
    if (!beaten) out.gnrs.push_back(clause_of(sp, m));
  }

  canonicalize(out.srs);
  canonicalize(out.nrs);
  canonicalize(out.gsrs);
  canonicalize(out.gnrs);
  return out;
}

bool is_gsr(const Circuit& c, NodeId root, const Instance& inst, const Term& term,
            const Limits& limits) {
  const auto e = brute_explanations(c, root, inst, limits);
  return std::find(e.gsrs.begin(), e.gsrs.end(), term) != e.gsrs.end();
}

bool is_gnr(const Circuit& c, NodeId root, const Instance& inst, const Clause& clause,
            const Limits& limits) {
  const auto e = brute_explanations(c, root, inst, limits);
  return std::find(e.gnrs.begin(), e.gnrs.end(), clause) != e.gnrs.end();
}

} // namespace discrex::oracle
