import json
import sys

from openseespy.opensees import *

wipe()
model('basic', '-ndm', 2, '-ndf', 3)

# nodes and supports
node(1, 0.0, 0.0)
node(2, 6.0, 0.0)
node(3, 0.0, 1.0)
node(4, 6.0, 1.0)
node(5, 0.0, 2.0)
node(6, 6.0, 2.0)
node(7, 12.0, 0.0)
node(8, 12.0, 1.0)
node(9, 12.0, 2.0)
node(10, 6.0, 6.0)
node(11, 12.0, 6.0)
node(12, 18.0, 0.0)
node(13, 18.0, 1.0)
node(14, 24.0, 0.0)
node(15, 24.0, 1.0)
node(16, 18.0, 2.0)
node(17, 24.0, 2.0)
node(18, 18.0, 6.0)
node(19, 24.0, 6.0)
node(20, 18.0, 8.0)
node(21, 24.0, 8.0)
node(22, 30.0, 0.0)
node(23, 30.0, 1.0)
node(24, 30.0, 2.0)
node(25, 30.0, 6.0)
node(26, 30.0, 8.0)
node(27, 24.0, 10.0)
node(28, 30.0, 10.0)
fix(1, 1, 1, 1)
fix(2, 1, 1, 1)
fix(7, 1, 1, 1)
fix(12, 1, 1, 1)
fix(14, 1, 1, 1)
fix(22, 1, 1, 1)
# transformation
geomTransf('Linear', 1)
# elements
element('elasticBeamColumn', 1, 1, 3, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 2, 2, 4, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 3, 3, 4, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 4, 3, 5, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 5, 4, 6, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 6, 5, 6, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 7, 7, 8, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 8, 4, 8, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 9, 8, 9, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 10, 6, 9, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 11, 6, 10, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 12, 9, 11, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 13, 10, 11, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 14, 12, 13, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 15, 8, 13, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 16, 14, 15, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 17, 13, 15, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 18, 13, 16, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 19, 15, 17, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 20, 16, 17, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 21, 16, 18, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 22, 17, 19, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 23, 18, 19, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 24, 18, 20, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 25, 19, 21, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 26, 20, 21, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 27, 22, 23, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 28, 15, 23, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 29, 23, 24, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 30, 17, 24, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 31, 24, 25, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 32, 19, 25, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 33, 25, 26, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 34, 21, 26, 0.015, 2e+08, 0.00015, 1)
element('elasticBeamColumn', 35, 21, 27, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 36, 26, 28, 0.02, 2e+08, 2e-04, 1)
element('elasticBeamColumn', 37, 27, 28, 0.015, 2e+08, 0.00015, 1)

# loads
timeSeries('Linear', 1)
pattern('Plain', 1, 1)
load(3, 50.0, 0.0, 0.0)
load(5, 50.0, 0.0, 0.0)
eleLoad('-ele', 3, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 6, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 8, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 10, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 13, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 15, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 17, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 20, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 23, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 26, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 28, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 30, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 32, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 34, '-type', '-beamUniform', -10.0)
eleLoad('-ele', 37, '-type', '-beamUniform', -10.0)

# analysis
system('BandGeneral')
numberer('RCM')
constraints('Plain')
integrator('LoadControl', 1.0)
algorithm('Linear')
analysis('Static')
ok = analyze(1)
if ok != 0:
    raise SystemExit('analysis failed with code %d' % ok)

# results
FIXED_NODES = [1, 2, 7, 12, 14, 22]
reactions()
out = {'displacements': [], 'reactions': [], 'member_end_forces': []}
for tag in sorted(getNodeTags()):
    ux, uy, rz = nodeDisp(tag)[:3]
    out['displacements'].append({'node': tag, 'ux': ux, 'uy': uy, 'rz': rz})
for tag in FIXED_NODES:
    rx, ry, mz = nodeReaction(tag)[:3]
    out['reactions'].append({'node': tag, 'Rx': rx, 'Ry': ry, 'Mz': mz})
for tag in sorted(getEleTags()):
    f = eleResponse(tag, 'localForce')
    out['member_end_forces'].append({'element': tag, 'N_i': f[0], 'V_i': f[1], 'M_i': f[2],
                                     'N_j': f[3], 'V_j': f[4], 'M_j': f[5]})
with open(sys.argv[1] if len(sys.argv) > 1 else 'result.json', 'w') as fh:
    json.dump(out, fh)
