/* Compiled as C99: proves the public header carries no C++ constructs. */
#include <stdio.h>
#include <string.h>

#include "dhms/dhms.h"

int main(void) {
    if (strcmp(dhms_version(), "") == 0) return 1;

    dhms_flow_network* net = dhms_flow_create(2, 0, 1);
    if (!net) return 1;
    if (dhms_flow_add_edge(net, 0, 1, 5) != DHMS_OK) return 1;
    uint64_t value = 0;
    if (dhms_flow_solve(net, &value, NULL) != DHMS_OK) return 1;
    dhms_flow_destroy(net);
    if (value != 5) return 1;

    /* error paths populate dhms_last_error */
    if (dhms_flow_add_edge(NULL, 0, 1, 1) == DHMS_OK) return 1;
    if (strlen(dhms_last_error()) == 0) return 1;

    printf("c header check ok\n");
    return 0;
}
