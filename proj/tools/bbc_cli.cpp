// Copyright 2026 The BBC Ledger Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything domain-level goes through the C API in
// bbc/bbc.h; this file only parses arguments, moves strings around, and
// maps statuses onto the exit-code contract:
//   0 success, 1 domain failure, 2 usage error, 3 I/O or parse error.

#include <cinttypes>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "bbc/bbc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(bbc_status status) {
  switch (status) {
    case BBC_OK:
      return kExitOk;
    case BBC_ERR_IO:
    case BBC_ERR_PARSE:
    case BBC_ERR_BAD_MAGIC:
    case BBC_ERR_TRUNCATED:
      return kExitIo;
    case BBC_ERR_INVALID_ARGUMENT:
    case BBC_ERR_RANGE:
      return kExitUsage;
    default:
      return kExitDomain;
  }
}

int fail(bbc_status status) {
  std::fprintf(stderr, "error: %s: %s\n", bbc_status_name(status),
               bbc_last_error());
  return exit_code_for(status);
}

/// Prints and releases a C-API string.
void emit(char* text) {
  if (text == nullptr) return;
  std::printf("%s\n", text);
  bbc_string_free(text);
}

struct KeygenArgs {
  uint64_t seed = 0;
  uint32_t key_id = 0;
  std::string out;
};

int cmd_keygen(const KeygenArgs& args) {
  bbc_key* key = nullptr;
  if (bbc_status st = bbc_key_derive(args.seed, args.key_id, &key)) {
    return fail(st);
  }
  bbc_status st = bbc_key_save(key, args.out.c_str());
  bbc_key_free(key);
  return st == BBC_OK ? kExitOk : fail(st);
}

struct EnrollArgs {
  std::string registry;
  uint32_t actor_id = 0;
  std::string role;
  std::string template_path;
  std::string key_path;
};

int cmd_enroll(const EnrollArgs& args) {
  bbc_registry* registry = nullptr;
  // A missing registry file means a fresh registry.
  bbc_status st = bbc_registry_load(args.registry.c_str(), &registry);
  if (st == BBC_ERR_IO) st = bbc_registry_create(&registry);
  if (st != BBC_OK) return fail(st);

  bbc_template* tpl = nullptr;
  bbc_key* key = nullptr;
  int code = kExitOk;
  st = bbc_template_load(args.template_path.c_str(), &tpl);
  if (st == BBC_OK) st = bbc_key_load(args.key_path.c_str(), &key);
  if (st == BBC_OK) {
    st = bbc_registry_enroll(registry, args.actor_id, args.role.c_str(), tpl,
                             key);
  }
  if (st == BBC_OK) st = bbc_registry_save(registry, args.registry.c_str());
  if (st != BBC_OK) code = fail(st);
  bbc_key_free(key);
  bbc_template_free(tpl);
  bbc_registry_free(registry);
  return code;
}

struct RunSimArgs {
  std::string scenario;
  std::string out_chain;
  bool trace = false;
};

int cmd_run_sim(const RunSimArgs& args) {
  bbc_scenario* scenario = nullptr;
  if (bbc_status st = bbc_scenario_load(args.scenario.c_str(), &scenario)) {
    return fail(st);
  }
  bbc_sim_result* result = nullptr;
  bbc_status run_status = bbc_sim_run(scenario, &result);
  bbc_scenario_free(scenario);
  if (result == nullptr) return fail(run_status);

  int code = kExitOk;
  if (run_status != BBC_OK) {
    std::fprintf(stderr, "error: %s: %s\n", bbc_status_name(run_status),
                 bbc_last_error());
    code = exit_code_for(run_status);
  }
  if (!args.out_chain.empty()) {
    bbc_chain* chain = nullptr;
    bbc_status st = bbc_sim_chain(result, 0, &chain);
    if (st == BBC_OK) st = bbc_chain_save(chain, args.out_chain.c_str());
    bbc_chain_free(chain);
    if (st != BBC_OK && code == kExitOk) code = fail(st);
  }
  if (args.trace) {
    char* trace = nullptr;
    if (bbc_sim_trace_jsonl(result, &trace) == BBC_OK) {
      std::fputs(trace, stderr);  // diagnostics channel
      bbc_string_free(trace);
    }
  }
  char* summary = nullptr;
  if (bbc_sim_summary_json(result, &summary) == BBC_OK) emit(summary);
  bbc_sim_result_free(result);
  return code;
}

struct ChainQueryArgs {
  std::string chain;
  std::string registry;
  uint64_t threshold = 0;
  bool threshold_set = false;
  std::string item;
  std::string head;  // verify only
};

struct LoadedChain {
  bbc_chain* chain = nullptr;
  bbc_registry* registry = nullptr;

  ~LoadedChain() {
    bbc_chain_free(chain);
    bbc_registry_free(registry);
  }
};

int load_chain_and_registry(const ChainQueryArgs& args, LoadedChain* out) {
  if (bbc_status st = bbc_chain_load(args.chain.c_str(), &out->chain)) {
    return fail(st);
  }
  if (bbc_status st =
          bbc_registry_load(args.registry.c_str(), &out->registry)) {
    return fail(st);
  }
  return kExitOk;
}

uint64_t effective_threshold(const ChainQueryArgs& args) {
  return args.threshold_set ? args.threshold : bbc_default_threshold();
}

int cmd_verify(const ChainQueryArgs& args) {
  LoadedChain loaded;
  if (int code = load_chain_and_registry(args, &loaded)) return code;
  uint64_t fail_height = 0;
  const char* fail_kind = nullptr;
  bbc_status st = bbc_chain_verify(
      loaded.chain, loaded.registry, effective_threshold(args),
      args.head.empty() ? nullptr : args.head.c_str(), &fail_height,
      &fail_kind);
  if (st == BBC_OK) {
    std::printf("{\"ok\":true}\n");
    return kExitOk;
  }
  if (st == BBC_ERR_VALIDATION) {
    std::printf("{\"failure_kind\":\"%s\",\"height\":%" PRIu64 "}\n",
                fail_kind, fail_height);
    return kExitDomain;
  }
  return fail(st);
}

int cmd_trace(const ChainQueryArgs& args) {
  LoadedChain loaded;
  if (int code = load_chain_and_registry(args, &loaded)) return code;
  char* json = nullptr;
  bbc_status st =
      bbc_chain_trace_json(loaded.chain, loaded.registry,
                           effective_threshold(args), args.item.c_str(), &json);
  if (st != BBC_OK) return fail(st);
  emit(json);
  return kExitOk;
}

int cmd_audit(const ChainQueryArgs& args) {
  LoadedChain loaded;
  if (int code = load_chain_and_registry(args, &loaded)) return code;
  char* json = nullptr;
  bbc_status st =
      bbc_chain_audit_json(loaded.chain, loaded.registry,
                           effective_threshold(args), args.item.c_str(), &json);
  if (st != BBC_OK) return fail(st);
  emit(json);
  return kExitOk;
}

struct TamperArgs {
  std::string chain;
  uint64_t block = 0;
  uint64_t offset = 0;
};

int cmd_tamper(const TamperArgs& args) {
  uint8_t before = 0;
  uint8_t after = 0;
  bbc_status st = bbc_tamper_chain_file(args.chain.c_str(), args.block,
                                        args.offset, &before, &after);
  if (st != BBC_OK) return fail(st);
  std::printf("{\"after\":%u,\"before\":%u,\"block\":%" PRIu64
              ",\"offset\":%" PRIu64 "}\n",
              after, before, args.block, args.offset);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biometric-attested supply-chain ledger"};
  app.require_subcommand(1);

  KeygenArgs keygen;
  auto* sc_keygen =
      app.add_subcommand("keygen", "derive a scrambling key file");
  sc_keygen->add_option("--seed", keygen.seed, "key derivation seed")
      ->required();
  sc_keygen->add_option("--key-id", keygen.key_id, "key identifier")
      ->required();
  sc_keygen->add_option("--out", keygen.out, "output key file")->required();

  EnrollArgs enroll;
  auto* sc_enroll =
      app.add_subcommand("enroll", "enroll an actor into a registry file");
  sc_enroll->add_option("--registry", enroll.registry, "registry file")
      ->required();
  sc_enroll->add_option("--actor-id", enroll.actor_id, "actor id")
      ->required();
  sc_enroll
      ->add_option("--role", enroll.role,
                   "FARMER | PROCESSOR | SHIPPER | RETAILER")
      ->required();
  sc_enroll
      ->add_option("--template", enroll.template_path, "raw template file")
      ->required();
  sc_enroll->add_option("--key", enroll.key_path, "scrambling key file")
      ->required();

  RunSimArgs runsim;
  auto* sc_runsim =
      app.add_subcommand("run-sim", "run a consensus scenario to quiescence");
  sc_runsim->add_option("--scenario", runsim.scenario, "scenario JSON file")
      ->required();
  sc_runsim->add_option("--out", runsim.out_chain,
                        "write node 0's committed chain here");
  sc_runsim->add_flag("--trace", runsim.trace,
                      "dump the delivery/drop trace to stderr");

  ChainQueryArgs verify;
  auto* sc_verify = app.add_subcommand("verify", "validate a chain file");
  sc_verify->add_option("--chain", verify.chain, "chain file")->required();
  sc_verify->add_option("--registry", verify.registry, "registry file")
      ->required();
  auto* verify_thr =
      sc_verify->add_option("--threshold", verify.threshold,
                            "match threshold (default: frozen constant)");
  sc_verify->add_option("--head", verify.head,
                        "expected head hash (hex) to anchor the tip");

  ChainQueryArgs trace;
  auto* sc_trace =
      app.add_subcommand("trace", "custody trace for one item");
  sc_trace->add_option("--chain", trace.chain, "chain file")->required();
  sc_trace->add_option("--registry", trace.registry, "registry file")
      ->required();
  auto* trace_thr = sc_trace->add_option("--threshold", trace.threshold,
                                         "match threshold");
  sc_trace->add_option("--item", trace.item, "item id")->required();

  ChainQueryArgs audit;
  auto* sc_audit =
      app.add_subcommand("audit", "ingredient-label audit for one item");
  sc_audit->add_option("--chain", audit.chain, "chain file")->required();
  sc_audit->add_option("--registry", audit.registry, "registry file")
      ->required();
  auto* audit_thr = sc_audit->add_option("--threshold", audit.threshold,
                                         "match threshold");
  sc_audit->add_option("--item", audit.item, "item id")->required();

  TamperArgs tamper;
  auto* sc_tamper = app.add_subcommand(
      "tamper", "flip one byte inside a block of a chain file");
  sc_tamper->add_option("--chain", tamper.chain, "chain file")->required();
  sc_tamper->add_option("--block", tamper.block, "block index")->required();
  sc_tamper->add_option("--offset", tamper.offset,
                        "byte offset within the block span")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  }

  verify.threshold_set = verify_thr->count() > 0;
  trace.threshold_set = trace_thr->count() > 0;
  audit.threshold_set = audit_thr->count() > 0;

  if (sc_keygen->parsed()) return cmd_keygen(keygen);
  if (sc_enroll->parsed()) return cmd_enroll(enroll);
  if (sc_runsim->parsed()) return cmd_run_sim(runsim);
  if (sc_verify->parsed()) return cmd_verify(verify);
  if (sc_trace->parsed()) return cmd_trace(trace);
  if (sc_audit->parsed()) return cmd_audit(audit);
  if (sc_tamper->parsed()) return cmd_tamper(tamper);
  return kExitUsage;
}
