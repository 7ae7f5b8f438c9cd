// Copyright 2026 The steinbound Authors.
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

#include <stdio.h>

#include "steinbound/steinbound.h"

int main(int argc, char** argv) {
  sb_run_config* config = NULL;
  sb_status st = sb_run_config_parse(argc, (const char* const*)argv, &config);
  if (st == SB_HELP_REQUESTED) {
    fputs(sb_last_error(), stdout);
    return 0;
  }
  if (st != SB_OK) {
    fprintf(stderr, "steinbound: %s\n", sb_last_error());
    return 1;
  }
  sb_run_summary summary;
  st = sb_run(config, &summary);
  sb_run_config_destroy(config);
  if (st != SB_OK) {
    fprintf(stderr, "steinbound: %s\n", sb_last_error());
    return 1;
  }
  for (size_t i = 0; i < summary.notes; ++i) fprintf(stderr, "note: %s\n", sb_run_note(i));
  if (summary.exit_status == 2)
    fprintf(stderr, "steinbound: %zu certification violation(s)\n", summary.violations);
  return summary.exit_status;
}
