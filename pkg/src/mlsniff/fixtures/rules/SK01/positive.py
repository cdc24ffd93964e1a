from sklearn.model_selection import train_test_split
from sklearn.preprocessing import StandardScaler

scaler = StandardScaler()
X_scaled = scaler.fit_transform(X)  # expect: SK01
X_train, X_test, y_train, y_test = train_test_split(X_scaled, y, random_state=0)
