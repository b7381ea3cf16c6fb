#include <stdio.h>
#include <string.h>
#include "crowdsim.h"

static const char *SCENE =
    "{\"version\":\"1.0\",\"world\":{\"width\":30.0,\"height\":30.0},"
    "\"spawners\":[{\"id\":\"s\",\"origin\":{\"x\":2.0,\"y\":4.0},\"width\":2.0,"
    "\"height\":2.0,\"agent_count\":3,\"goal_id\":\"g\"}],"
    "\"goals\":[{\"id\":\"g\",\"center\":{\"x\":12.0,\"y\":5.0},\"radius\":0.5}]}";

int main(void) {
    CsScene *scene = NULL;
    if (cs_scene_parse(SCENE, &scene) != CS_STATUS_OK) {
        char *err = cs_last_error();
        fprintf(stderr, "parse failed: %s\n", err);
        cs_string_free(err);
        return 1;
    }
    if (cs_scene_agent_count(scene) != 3) return 2;

    CsResult *result = NULL;
    if (cs_simulate(scene, "{\"seed\": 7}", &result) != CS_STATUS_OK) return 3;
    CsSummary summary;
    if (cs_result_summary(result, &summary) != CS_STATUS_OK) return 4;
    if (summary.agents_total != 3 || summary.agents_arrived != 3) return 5;

    char *csv = NULL;
    if (cs_result_trajectories_csv(result, &csv) != CS_STATUS_OK) return 6;
    if (strncmp(csv, "agent_id,step,x,y\n", 18) != 0) return 7;
    cs_string_free(csv);

    CsScene *bad = NULL;
    if (cs_scene_parse("{", &bad) != CS_STATUS_PARSE_ERROR || bad != NULL) return 8;

    printf("ok %s %.1f\n", cs_version(), summary.simulation_time_s);
    cs_result_free(result);
    cs_scene_free(scene);
    return 0;
}
