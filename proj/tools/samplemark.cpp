// Copyright 2026 The samplemark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "samplemark/harness/commands.hpp"

namespace sm = samplemark;
namespace h = samplemark::harness;

namespace {

struct Flags {
  std::string lm = "synthetic";
  std::string method = "swor";
  std::string policy = "random_different";
  std::string detector = "auto";
};

void add_lm_flags(CLI::App* app, h::CommandOptions& o, Flags& f) {
  app->add_option("--lm", f.lm, "language model: synthetic or ngram")
      ->check(CLI::IsMember({"synthetic", "ngram"}));
  app->add_option("--vocab", o.lm.synthetic.vocab_size, "synthetic vocabulary size");
  app->add_option("--order", o.lm.synthetic.order, "synthetic context order");
  app->add_option("--concentration", o.lm.synthetic.concentration,
                  "synthetic logit scale divisor");
  app->add_option("--model-seed", o.lm.synthetic.model_seed, "synthetic model seed");
  app->add_option("--corpus", o.lm.corpus_path, "ngram training text");
  app->add_option("--ngram-n", o.lm.ngram.n, "ngram order n");
  app->add_option("--alpha", o.lm.ngram.alpha, "ngram additive smoothing");
}

void add_gen_flags(CLI::App* app, h::CommandOptions& o, Flags& f) {
  app->add_option("--method", f.method, "swr, swor, mwm or none")
      ->check(CLI::IsMember({"swr", "swor", "mwm", "none"}));
  app->add_option("--y", o.gen.y, "candidates per step");
  app->add_option("--k", o.gen.k, "context window for secret numbers and greenlists");
  app->add_option("--top-k", o.gen.top_k, "top-k truncation");
  app->add_option("--temp", o.gen.temperature, "sampling temperature");
  app->add_option("--gamma", o.gen.gamma, "greenlist fraction");
  app->add_option("--delta", o.gen.delta, "greenlist logit bias");
  app->add_option("--threshold", o.gen.threshold_u, "z-score threshold");
  app->add_option("--n", o.gen.n, "number of samples");
  app->add_option("--max-new", o.gen.max_new, "tokens generated per sample");
  app->add_option("--prompt-len", o.gen.prompt_len, "prompt length in tokens");
  app->add_option("--seed", o.gen.master_seed, "master seed");
}

void add_out(CLI::App* app, h::CommandOptions& o) {
  app->add_option("--out", o.out_path, "output file (default stdout)");
}

// Maps parsed flag strings onto the option struct; returns false on bad input.
bool finish(h::CommandOptions& o, const Flags& f) {
  o.lm.kind = f.lm == "ngram" ? h::LmKind::kNgram : h::LmKind::kSynthetic;
  o.gen.method = *h::parse_method(f.method);
  const auto policy = sm::parse_attack_policy(f.policy);
  if (!policy) {
    std::cerr << "error: unknown attack policy '" << f.policy << "'\n";
    return false;
  }
  o.policy = *policy;
  if (f.detector == "auto") {
    o.detector = h::DetectorKind::kAuto;
  } else if (f.detector == "mwm") {
    o.detector = h::DetectorKind::kMwm;
  } else {
    o.detector = h::DetectorKind::kSecretNumber;
    if (f.detector == "swr" || f.detector == "swor") o.detector_method = h::parse_method(f.detector);
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"samplemark: sampling-based text watermarking experiments"};
  app.require_subcommand(1);

  h::CommandOptions o;
  Flags f;

  CLI::App* gen = app.add_subcommand("generate", "generate records as JSONL");
  add_lm_flags(gen, o, f);
  add_gen_flags(gen, o, f);
  add_out(gen, o);

  CLI::App* det = app.add_subcommand("detect", "score JSONL records, write CSV");
  det->add_option("--in", o.in_path, "input JSONL")->required();
  det->add_option("--detector", f.detector, "auto, swr, swor, generic or mwm")
      ->check(CLI::IsMember({"auto", "swr", "swor", "generic", "mwm"}));
  det->add_option("--k", o.gen.k, "context window");
  det->add_option("--threshold", o.gen.threshold_u, "z-score threshold");
  det->add_option("--gamma", o.gen.gamma, "greenlist fraction for --detector mwm");
  add_out(det, o);

  CLI::App* att = app.add_subcommand("attack", "apply token substitution to JSONL");
  att->add_option("--in", o.in_path, "input JSONL")->required();
  att->add_option("--rate", o.rate, "fraction of tokens replaced")->required();
  att->add_option("--policy", f.policy, "random_different or lm_proposal");
  att->add_option("--attack-seed", o.attack_seed, "base attack seed");
  add_out(att, o);

  CLI::App* swp = app.add_subcommand("sweep", "generate, attack, detect over a grid");
  add_lm_flags(swp, o, f);
  add_gen_flags(swp, o, f);
  swp->add_option("--axis", o.axes, "name=v1,v2,... (repeatable)")->required();
  swp->add_option("--policy", f.policy, "attack policy for attack_rate axes");
  swp->add_option("--attack-seed", o.attack_seed, "base attack seed");
  add_out(swp, o);

  CLI::App* rep = app.add_subcommand("report", "aggregate sweep CSVs");
  rep->add_option("--in", o.inputs, "sweep CSV files")->required();
  rep->add_option("--svg", o.svg_path, "detection vs attack rate chart");
  add_out(rep, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? h::kExitOk : h::kExitUsage;
  }
  if (!finish(o, f)) return h::kExitUsage;

  if (gen->parsed()) return h::cmd_generate(o);
  if (det->parsed()) return h::cmd_detect(o);
  if (att->parsed()) return h::cmd_attack(o);
  if (swp->parsed()) return h::cmd_sweep(o);
  return h::cmd_report(o);
}
